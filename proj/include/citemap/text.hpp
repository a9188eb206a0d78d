#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace citemap::text {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// ASCII lowercase; leaves non-ASCII bytes untouched.
std::string to_lower(std::string_view s);

/// Replaces Latin-1 Supplement and Latin Extended-A letters with their base
/// ASCII letter ("é" -> "e", "ß" -> "ss"). Other multibyte sequences drop.
std::string fold_diacritics(std::string_view utf8);

/// Citation-index author key: lowercase surname plus first initial, with
/// diacritics folded and punctuation removed. Accepts "Surname, Given",
/// "Surname GI" and "Surname G.I." styles. Returns "" if no surname is found.
std::string author_key(std::string_view author);

/// Lowercase alphanumeric words joined by single spaces.
std::string source_key(std::string_view source);

/// printf-style fixed formatting, independent of the global locale.
std::string fixed(double value, int decimals);

std::string xml_escape(std::string_view s);

}  // namespace citemap::text
