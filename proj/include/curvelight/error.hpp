// Copyright 2026 The curvelight Authors
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

namespace curvelight {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (z outside [0, T],
/// non-positive index, bad mode index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The transverse grid cannot hold the requested fields or modes.
class GridError : public Error {
 public:
  using Error::Error;
};

class InsufficientBoundStates : public Error {
 public:
  InsufficientBoundStates(std::size_t requested, std::size_t found)
      : Error("insufficient bound states: requested " + std::to_string(requested) +
              ", the well supports " + std::to_string(found)),
        requested_(requested),
        found_(found) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t requested_;
  std::size_t found_;
};

/// Step-size guard: the requested number of z-steps would advance the phase by
/// more than the allowed amount per step.
class StepGuardError : public Error {
 public:
  StepGuardError(const std::string& what, std::size_t required_steps)
      : Error(what), required_steps_(required_steps) {}

  std::size_t required_steps() const noexcept { return required_steps_; }

 private:
  std::size_t required_steps_;
};

/// The field is not dominated by the ground mode, so its phase is not defined.
class NonAdiabaticField : public Error {
 public:
  using Error::Error;
};

/// A two-photon operation was applied at the wrong stage of the pipeline.
class StageError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration. `path()` names the offending field,
/// e.g. "waveguide.index_profile.delta_n".
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace curvelight
