// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "bellsim/abc.hpp"
#include "bellsim/channels.hpp"
#include "bellsim/circuit.hpp"
#include "bellsim/coupling.hpp"
#include "bellsim/density.hpp"
#include "bellsim/estimator.hpp"
#include "bellsim/execute.hpp"
#include "bellsim/gate.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/serialize.hpp"
#include "bellsim/statevector.hpp"
#include "bellsim/variants.hpp"
#include "bellsim/verify.hpp"
