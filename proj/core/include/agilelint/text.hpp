#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "agilelint/model.hpp"

namespace agilelint {

/// Counts task-list lines: optional indentation, "-" or "*", one space, then
/// "[ ]", "[x]" or "[X]".
std::size_t count_checkboxes(std::string_view body);

/// Collapses every whitespace run into one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

/// Story size in characters (UTF-8 code points) of the normalized
/// "title body" text. Code blocks in the body count like any other text.
std::size_t story_length(std::string_view title, std::string_view body);
inline std::size_t story_length(const UserStory& story) { return story_length(story.title, story.body); }

}  // namespace agilelint
