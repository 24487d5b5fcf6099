// Copyright 2026 The lopt Authors
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

// Umbrella header.

#pragma once

#define LOPT_VERSION "0.1.0"

#include "lopt/errors.hpp"
#include "lopt/fock.hpp"
#include "lopt/io.hpp"
#include "lopt/linalg.hpp"
#include "lopt/matrix.hpp"
#include "lopt/modes.hpp"
#include "lopt/nelder_mead.hpp"
#include "lopt/nogo.hpp"
#include "lopt/permanent.hpp"
#include "lopt/rng.hpp"
#include "lopt/singlerail.hpp"
#include "lopt/verify.hpp"
