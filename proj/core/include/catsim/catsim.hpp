// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "catsim/dynamics.hpp"
#include "catsim/errors.hpp"
#include "catsim/experiments.hpp"
#include "catsim/fock.hpp"
#include "catsim/oracles.hpp"
#include "catsim/parallel.hpp"
#include "catsim/pi_multiple.hpp"
#include "catsim/quadrature.hpp"
#include "catsim/version.hpp"
