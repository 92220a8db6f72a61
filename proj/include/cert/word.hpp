#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace cert {

using json = nlohmann::json;

struct WordSyntaxError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Letters are signed generator indices: +(i+1) is generator i, -(i+1) its
// inverse. The empty word is the identity.
struct Word {
    std::vector<int> letters;
    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
};

inline int letter(int gen, bool inverse = false) { return inverse ? -(gen + 1) : gen + 1; }
inline int generator_of(int l) { return (l > 0 ? l : -l) - 1; }

Word inverse(const Word& w);
Word operator*(const Word& a, const Word& b);
Word power(const Word& w, long k);
Word free_reduce(const Word& w);
// free reduction followed by cancelling matching letters at the two ends
Word cyclic_reduce(const Word& w);
std::vector<long> exponent_sums(const Word& w, int generators);

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    int rank() const { return static_cast<int>(generators.size()); }
};

// Generators are single lower-case letters; an upper-case letter is the inverse.
// Words longer than the alphabet allows use the list form [1, -2, ...].
Word parse_word(const std::string& s, const std::vector<std::string>& generators);
Word word_from_json(const json& j, const std::vector<std::string>& generators);
std::string word_to_string(const Word& w, const std::vector<std::string>& generators);

Presentation presentation_from_json(const json& j);
json presentation_to_json(const Presentation& p);

}  // namespace cert
