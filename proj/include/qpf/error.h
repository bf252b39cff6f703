// Copyright 2026 The qpowerflow Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented invariant (non-Hermitian matrix, bad network, ...).
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// Network document could not be read or does not follow the schema.
class ParseError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class SingularMatrixError : public Error {
   public:
    SingularMatrixError(const std::string &what, size_t pivot_index) : Error(what), pivot_index_(pivot_index) {
    }
    size_t pivot_index() const {
        return pivot_index_;
    }

   private:
    size_t pivot_index_;
};

class PostselectionError : public Error {
   public:
    using Error::Error;
};

}  // namespace qpf
