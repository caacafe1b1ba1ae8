// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace copyctl {

// Base class for errors caused by bad inputs (files, flags, lexicon specs).
// The CLI maps these to exit code 2. Contract violations inside the library
// throw std::logic_error subclasses instead and map to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LineCountMismatch : public InputError {
 public:
  LineCountMismatch(const std::string& path, std::size_t expected,
                    std::size_t actual)
      : InputError("line count mismatch: " + path + " has " +
                   std::to_string(actual) + " lines, expected " +
                   std::to_string(expected)),
        path(path) {}
  std::string path;
};

class PosLengthMismatch : public InputError {
 public:
  PosLengthMismatch(std::size_t line, std::size_t tags, std::size_t tokens)
      : InputError("pos tag count mismatch at line " + std::to_string(line) +
                   ": " + std::to_string(tags) + " tags for " +
                   std::to_string(tokens) + " tokens"),
        line(line) {}
  std::size_t line;
};

class FileOpenError : public InputError {
 public:
  explicit FileOpenError(const std::string& path)
      : InputError("cannot open file: " + path), path(path) {}
  std::string path;
};

class EmptyCorpus : public InputError {
 public:
  EmptyCorpus() : InputError("corpus contains no sentences") {}
};

class MissingPos : public InputError {
 public:
  explicit MissingPos(std::size_t line)
      : InputError("example at line " + std::to_string(line) +
                   " has no pos tags"),
        line(line) {}
  std::size_t line;
};

class MissingMeta : public InputError {
 public:
  MissingMeta(const std::string& key, std::size_t line)
      : InputError("example at line " + std::to_string(line) +
                   " lacks meta key '" + key + "'"),
        key(key),
        line(line) {}
  std::string key;
  std::size_t line;
};

class BadDistribution : public InputError {
 public:
  explicit BadDistribution(const std::string& word)
      : InputError("lexicon distribution for '" + word +
                   "' does not sum to 1 or has a non-positive probability"),
        word(word) {}
  std::string word;
};

class DuplicateEntry : public InputError {
 public:
  explicit DuplicateEntry(const std::string& word)
      : InputError("duplicate lexicon entry for '" + word + "'"), word(word) {}
  std::string word;
};

class SearchSpaceTooLarge : public InputError {
 public:
  SearchSpaceTooLarge(std::size_t vocab, std::size_t max_len)
      : InputError("exhaustive search space V^max_len too large (V=" +
                   std::to_string(vocab) +
                   ", max_len=" + std::to_string(max_len) + ")") {}
};

class ModelVocabMismatch : public std::logic_error {
 public:
  ModelVocabMismatch(std::size_t got, std::size_t expected)
      : std::logic_error("scoring model returned " + std::to_string(got) +
                         " log-probs for a vocabulary of size " +
                         std::to_string(expected)) {}
};

class PrefixTooLong : public std::logic_error {
 public:
  PrefixTooLong(std::size_t prefix, std::size_t source)
      : std::logic_error("prefix length " + std::to_string(prefix) +
                         " exceeds source length " + std::to_string(source)) {}
};

}  // namespace copyctl
