// Copyright 2026 The mxl Authors
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

#include "mxl/errors.hpp"
#include "mxl/hermitian.hpp"
#include "mxl/geometry.hpp"
#include "mxl/schedule.hpp"
#include "mxl/rng.hpp"
#include "mxl/learner.hpp"
#include "mxl/game.hpp"
#include "mxl/mimo.hpp"
#include "mxl/toy_game.hpp"
#include "mxl/config.hpp"
#include "mxl/harness.hpp"
