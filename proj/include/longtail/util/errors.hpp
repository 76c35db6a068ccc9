/*
 * Copyright 2026 The longtail authors
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
 */
#pragma once

#include <stdexcept>
#include <string>

namespace longtail {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Filtering or preparation left no data to work with.
class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

/// Unknown user/item/algorithm label.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Training produced non-finite factors.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Metric has no defined value for the given inputs (e.g. empty long tail).
class MetricUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Bad experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace longtail
