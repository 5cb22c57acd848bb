/***********************************************************************
*
*  Copyright 2026 The mhdd authors
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
*
************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace mhdd {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or data file. The message carries line/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File system failure; the message names the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A computation produced NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace mhdd
