#pragma once

// UTF-8 <-> UTF-32 conversion and the small character classes the pipeline
// needs. All offsets in the library count Unicode scalar values.

#include <string>
#include <string_view>

namespace gedspan::utf8 {

// Throws InvalidInput on malformed UTF-8, surrogates, or overlong forms.
std::u32string Decode(std::string_view bytes);
std::string Encode(std::u32string_view text);
void AppendCodepoint(std::string& out, char32_t cp);

// Number of scalar values in a valid UTF-8 string.
std::size_t Length(std::string_view bytes);

bool IsSpace(char32_t cp);
bool IsPunct(char32_t cp);

}  // namespace gedspan::utf8
