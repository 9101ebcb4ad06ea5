#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace antsyn::text {

// ASCII lowercasing; bytes outside ASCII (UTF-8 continuation etc.) are kept.
std::string lowercase(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

// Splits on runs of ASCII whitespace, dropping empty fields.
std::vector<std::string_view> split_whitespace(std::string_view s);

std::string_view trim(std::string_view s);

bool has_whitespace(std::string_view s);

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Fixed-point rendering with the given number of decimals.
std::string format_fixed(double value, int decimals);

}  // namespace antsyn::text
