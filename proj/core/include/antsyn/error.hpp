#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antsyn {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input at a known line of a text file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A sentence that parsed but is not a well-formed dependency tree.
class ValidationError : public Error {
 public:
  ValidationError(std::size_t sentence_index, std::size_t first_line,
                  const std::string& violation)
      : Error("sentence " + std::to_string(sentence_index) + " (line " +
              std::to_string(first_line) + "): " + violation),
        sentence_index_(sentence_index),
        violation_(violation) {}

  std::size_t sentence_index() const noexcept { return sentence_index_; }
  const std::string& violation() const noexcept { return violation_; }

 private:
  std::size_t sentence_index_;
  std::string violation_;
};

// Invalid option values or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace antsyn
