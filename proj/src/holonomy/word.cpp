#include "cert/word.hpp"

#include <cctype>

namespace cert {

Word inverse(const Word& w) {
    Word r;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

Word power(const Word& w, long k) {
    Word base = k < 0 ? inverse(w) : w, r;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
    return r;
}

Word free_reduce(const Word& w) {
    Word r;
    for (int l : w.letters) {
        if (!r.letters.empty() && r.letters.back() == -l)
            r.letters.pop_back();
        else
            r.letters.push_back(l);
    }
    return r;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    size_t i = 0, j = r.letters.size();
    while (j - i >= 2 && r.letters[i] == -r.letters[j - 1]) ++i, --j;
    return Word{{r.letters.begin() + i, r.letters.begin() + j}};
}

std::vector<long> exponent_sums(const Word& w, int generators) {
    std::vector<long> e(generators, 0);
    for (int l : w.letters) e.at(generator_of(l)) += l > 0 ? 1 : -1;
    return e;
}

Word parse_word(const std::string& s, const std::vector<std::string>& generators) {
    Word w;
    for (char ch : s) {
        if (ch == '1' && s.size() == 1) break;  // "1" spells the identity
        if (!std::isalpha(static_cast<unsigned char>(ch))) throw WordSyntaxError(std::string("bad letter '") + ch + "'");
        std::string low(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        int gen = -1;
        for (size_t i = 0; i < generators.size(); ++i)
            if (generators[i] == low) gen = static_cast<int>(i);
        if (gen < 0) throw WordSyntaxError("unknown generator '" + low + "'");
        w.letters.push_back(letter(gen, std::isupper(static_cast<unsigned char>(ch))));
    }
    return w;
}

Word word_from_json(const json& j, const std::vector<std::string>& generators) {
    if (j.is_string()) return parse_word(j.get<std::string>(), generators);
    if (!j.is_array()) throw WordSyntaxError("a word is a string or a list of signed indices");
    Word w;
    for (const json& x : j) {
        int l = x.get<int>();
        if (l == 0 || generator_of(l) >= static_cast<int>(generators.size())) throw WordSyntaxError("letter out of range");
        w.letters.push_back(l);
    }
    return w;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& generators) {
    if (w.empty()) return "1";
    std::string s;
    for (int l : w.letters) {
        const std::string& g = generators.at(generator_of(l));
        if (l > 0)
            s += g;
        else
            for (char c : g) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return s;
}

Presentation presentation_from_json(const json& j) {
    Presentation p;
    p.generators = j.at("generators").get<std::vector<std::string>>();
    for (const auto& g : p.generators)
        if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0])))
            throw WordSyntaxError("generator names are single lower-case letters");
    for (const json& r : j.value("relators", json::array())) {
        Word w = word_from_json(r, p.generators);
        if (w.empty()) throw WordSyntaxError("relators must be nonempty");
        p.relators.push_back(std::move(w));
    }
    return p;
}

json presentation_to_json(const Presentation& p) {
    json rel = json::array();
    for (const Word& w : p.relators) rel.push_back(word_to_string(w, p.generators));
    return {{"generators", p.generators}, {"relators", rel}};
}

}  // namespace cert
