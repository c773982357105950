// Copyright 2026 The Labelflow Authors.
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

#include "labelflow/error.h"

namespace labelflow {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedInput: return "MalformedInput";
    case ErrorKind::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorKind::kBadNesting: return "BadNesting";
    case ErrorKind::kUnknownDocument: return "UnknownDocument";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kInvalidLabel: return "InvalidLabel";
    case ErrorKind::kDuplicateDocId: return "DuplicateDocId";
    case ErrorKind::kDuplicateLabelName: return "DuplicateLabelName";
    case ErrorKind::kMapNotWellDefined: return "MapNotWellDefined";
    case ErrorKind::kDomainGap: return "DomainGap";
    case ErrorKind::kUniverseMismatch: return "UniverseMismatch";
    case ErrorKind::kEmptyUniverse: return "EmptyUniverse";
    case ErrorKind::kUnknownNode: return "UnknownNode";
    case ErrorKind::kInvalidRuleSpec: return "InvalidRuleSpec";
    case ErrorKind::kIncompleteRules: return "IncompleteRules";
    case ErrorKind::kContradictoryRules: return "ContradictoryRules";
  }
  return "Unknown";
}

}  // namespace labelflow
