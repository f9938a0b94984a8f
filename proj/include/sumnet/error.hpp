/**************************************************************************
 * sumnet/error.hpp
 *
 * Copyright 2026 The sumnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace sumnet {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A resource limit (table size, enumeration budget) would be exceeded.
/// Never a statement about existence or non-existence of a code.
class budget_exceeded : public error {
public:
    using error::error;
};

/// Malformed document or specification string.
class format_error : public error {
public:
    using error::error;
};

}  // namespace sumnet
