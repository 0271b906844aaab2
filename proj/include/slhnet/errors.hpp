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

#include <stdexcept>
#include <string>

namespace slhnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: duplicate labels, wrong shapes, invalid permutations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operators live on incompatible tensor-factor signatures.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Two triples with different field channel counts were combined.
class ChannelMismatch : public Error {
 public:
  using Error::Error;
};

/// Network wiring violates reducibility (reuse, cycles, unknown names).
class NetworkError : public Error {
 public:
  using Error::Error;
};

/// Integration diverged or drifted beyond its guard.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace slhnet
