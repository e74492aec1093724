// Copyright 2026 The tristereo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
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

namespace tristereo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad magic, truncated payload, unparsable header).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that uses a feature outside what is supported (e.g. 16-bit PNM).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters or mismatched inputs supplied by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure while reading or writing.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tristereo
