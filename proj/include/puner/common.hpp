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

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace puner {

/// Generic runtime failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with user-supplied inputs: missing files, malformed records,
/// unknown type names. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void concat_impl(std::ostringstream&) {}

template <typename T, typename... Rest>
void concat_impl(std::ostringstream& os, const T& head, Rest&&... rest) {
  os << head;
  concat_impl(os, std::forward<Rest>(rest)...);
}

}  // namespace detail

template <typename... Args>
std::string cat(Args&&... args) {
  std::ostringstream os;
  detail::concat_impl(os, std::forward<Args>(args)...);
  return os.str();
}

template <typename... Args>
[[noreturn]] void fail(Args&&... args) {
  throw Error(cat(std::forward<Args>(args)...));
}

template <typename... Args>
[[noreturn]] void fail_input(Args&&... args) {
  throw InputError(cat(std::forward<Args>(args)...));
}

// Locale-independent character helpers. Bytes outside ASCII pass through
// unchanged, so UTF-8 sequences are preserved verbatim.
inline bool ascii_upper_char(char c) { return c >= 'A' && c <= 'Z'; }
inline bool ascii_lower_char(char c) { return c >= 'a' && c <= 'z'; }
inline bool ascii_digit_char(char c) { return c >= '0' && c <= '9'; }

inline char ascii_tolower_char(char c) {
  return ascii_upper_char(c) ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_tolower_char(c);
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Splits on runs of spaces, dropping empty pieces.
inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return s.substr(b, e - b);
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace puner
