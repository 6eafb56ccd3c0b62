#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trendforge {

// UTF-8 decoding that never fails: malformed sequences decode to U+FFFD,
// one replacement per rejected byte. Encoding only ever sees valid scalars.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

// Word characters are letters, numbers, and combining marks in any script.
bool is_word_char(char32_t cp);
bool is_digit_char(char32_t cp);
bool is_space_char(char32_t cp);

// Simple (1:1) lowercase mapping; code points without a mapping pass through.
char32_t to_lower(char32_t cp);

}  // namespace trendforge
