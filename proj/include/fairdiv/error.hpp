// Copyright 2026 The FairDiv Authors.
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
#include <string_view>

namespace fairdiv {

enum class Errc {
  kEmptyDataset,
  kInvalidCoordinate,
  kInvalidRadius,
  kUnknownPoint,
  kExhaustedMass,
  kTooFewPoints,
  kEmptyCandidates,
  kNotEnoughPoints,
  kColorDeficit,
  kNoFeasibleGamma,
  kFailedAfterRepeats,
  kSpecUnsatisfiableOnCoreset,
  kUnknownColor,
  kSpecUnsatisfiableOnSynopsis,
  kOracleTooLarge,
  kSpecUnsatisfiable,
  kInvalidArgument,
  kMissingColumn,
  kUnparsableNumber,
  kInconsistentDimension,
  kEmptyFile,
  kIo,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kEmptyDataset: return "EmptyDataset";
    case Errc::kInvalidCoordinate: return "InvalidCoordinate";
    case Errc::kInvalidRadius: return "InvalidRadius";
    case Errc::kUnknownPoint: return "UnknownPoint";
    case Errc::kExhaustedMass: return "ExhaustedMass";
    case Errc::kTooFewPoints: return "TooFewPoints";
    case Errc::kEmptyCandidates: return "EmptyCandidates";
    case Errc::kNotEnoughPoints: return "NotEnoughPoints";
    case Errc::kColorDeficit: return "ColorDeficit";
    case Errc::kNoFeasibleGamma: return "NoFeasibleGamma";
    case Errc::kFailedAfterRepeats: return "FailedAfterRepeats";
    case Errc::kSpecUnsatisfiableOnCoreset: return "SpecUnsatisfiableOnCoreset";
    case Errc::kUnknownColor: return "UnknownColor";
    case Errc::kSpecUnsatisfiableOnSynopsis: return "SpecUnsatisfiableOnSynopsis";
    case Errc::kOracleTooLarge: return "OracleTooLarge";
    case Errc::kSpecUnsatisfiable: return "SpecUnsatisfiable";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kMissingColumn: return "MissingColumn";
    case Errc::kUnparsableNumber: return "UnparsableNumber";
    case Errc::kInconsistentDimension: return "InconsistentDimension";
    case Errc::kEmptyFile: return "EmptyFile";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace fairdiv
