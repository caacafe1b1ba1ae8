// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <vector>

#include "copyctl/text.hpp"
#include "copyctl/vocab.hpp"

namespace copyctl {

// Next-token log-probability provider. Implementations must be
// deterministic for a fixed (source, prefix) and safe for concurrent
// read-only queries; the returned vector covers the whole vocabulary and
// exponentiates to a distribution.
class ScoringModel {
 public:
  virtual ~ScoringModel() = default;

  virtual std::vector<double> next_logprobs(
      const Sentence& source, const std::vector<TokenId>& prefix) const = 0;
};

}  // namespace copyctl
