#include "agilelint/text.hpp"

namespace agilelint {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_task_item(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i >= line.size() || (line[i] != '-' && line[i] != '*')) return false;
  ++i;
  if (i >= line.size() || line[i] != ' ') return false;
  ++i;
  if (i + 3 > line.size() || line[i] != '[' || line[i + 2] != ']') return false;
  const char mark = line[i + 1];
  return mark == ' ' || mark == 'x' || mark == 'X';
}

}  // namespace

std::size_t count_checkboxes(std::string_view body) {
  std::size_t count = 0;
  while (!body.empty()) {
    const auto nl = body.find('\n');
    std::string_view line = body.substr(0, nl);
    if (is_task_item(line)) ++count;
    if (nl == std::string_view::npos) break;
    body.remove_prefix(nl + 1);
  }
  return count;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::size_t story_length(std::string_view title, std::string_view body) {
  std::string joined;
  joined.reserve(title.size() + body.size() + 1);
  joined.append(title);
  joined.push_back(' ');
  joined.append(body);
  std::size_t count = 0;
  for (const char c : normalize_whitespace(joined)) {
    // Continuation bytes 10xxxxxx do not start a code point.
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

}  // namespace agilelint
