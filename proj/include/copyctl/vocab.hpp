// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "copyctl/unicode.hpp"

namespace copyctl {

using TokenId = std::uint32_t;

// Dense id <-> surface bijection over the target vocabulary, with the three
// reserved control ids first. Immutable once built.
class Vocabulary {
 public:
  Vocabulary() {
    add("<s>");
    add("</s>");
    add("<unk>");
  }

  TokenId bos() const { return 0; }
  TokenId eos() const { return 1; }
  TokenId unk() const { return 2; }

  std::size_t size() const { return surfaces_.size(); }

  // Returns the existing id for a known surface, otherwise assigns the
  // next dense id.
  TokenId add(const std::string& surface) {
    auto it = ids_.find(surface);
    if (it != ids_.end()) return it->second;
    const TokenId id = static_cast<TokenId>(surfaces_.size());
    ids_.emplace(surface, id);
    surfaces_.push_back(surface);
    punct_.push_back(is_punct_token(surface));
    return id;
  }

  const std::string& surface(TokenId id) const { return surfaces_[id]; }

  std::optional<TokenId> id_of(const std::string& surface) const {
    auto it = ids_.find(surface);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  bool is_punct(TokenId id) const { return punct_[id] != 0; }

  bool is_reserved(TokenId id) const { return id == bos() || id == eos() || id == unk(); }

 private:
  std::vector<std::string> surfaces_;
  std::vector<char> punct_;
  std::unordered_map<std::string, TokenId> ids_;
};

}  // namespace copyctl
