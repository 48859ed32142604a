//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_ERROR_H_
#define FRAGTOK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fragtok {

enum class ErrorCode {
  // smiles
  kSyntaxError,
  kUnbalancedRing,
  kUnbalancedBranch,
  kUnknownElement,
  kInvalidChirality,
  kValenceError,
  kUnsupportedFeature,
  kDisconnectedSubgraph,
  kMissingCoordinates,
  // molgraph
  kIndexOutOfRange,
  // tokenizer
  kEmptyCorpus,
  kNotAdjacent,
  // features
  kVocabularyMismatch,
  kEmptyInput,
  // hiergraph
  kMalformedRecord,
  kEmptyPocket,
  kEmptyEntity,
  // attention
  kUnknownSymbol,
  kShapeMismatch,
  // io
  kFileNotFound,
  kEncodingError,
  kVersionMismatch,
  kCorruptRecord,
};

std::string_view error_code_name(ErrorCode code);

/// Input-level failure raised by every fragtok module. Internal invariant
/// violations are not reported through this type.
class Error: public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) { }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace fragtok

#endif  // FRAGTOK_ERROR_H_
