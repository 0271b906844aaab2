// Copyright 2026 The slhnet Authors
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

// Umbrella header for the library.

#include "slhnet/classical.hpp"
#include "slhnet/components.hpp"
#include "slhnet/dynamics.hpp"
#include "slhnet/errors.hpp"
#include "slhnet/holevo.hpp"
#include "slhnet/ito.hpp"
#include "slhnet/network.hpp"
#include "slhnet/operator.hpp"
#include "slhnet/operator_matrix.hpp"
#include "slhnet/parallel.hpp"
#include "slhnet/slh.hpp"
#include "slhnet/space.hpp"
