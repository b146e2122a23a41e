#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padic_periods/schottky/ball.hpp"

namespace padic_periods {

/// alpha_i^(+-1), generator index from 0.
struct Letter {
    std::size_t generator = 0;
    int sign = 1;

    Letter inverse() const { return Letter{generator, -sign}; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word in the generators, read left to right as a product.
struct Word {
    std::vector<Letter> letters;

    std::size_t length() const { return letters.size(); }
    bool is_identity() const { return letters.empty(); }

    Word inverse() const {
        Word w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(it->inverse());
        return w;
    }

    /// Free reduction of the concatenation.
    Word operator*(const Word& o) const {
        Word w = *this;
        for (const Letter& l : o.letters) {
            if (!w.letters.empty() && w.letters.back() == l.inverse()) {
                w.letters.pop_back();
            } else {
                w.letters.push_back(l);
            }
        }
        return w;
    }

    /// "identity" or e.g. "g1*g2^-1*g2^-1" (generators numbered from 1).
    std::string label() const {
        if (letters.empty()) return "identity";
        std::string s;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i) s += "*";
            s += "g" + std::to_string(letters[i].generator + 1);
            if (letters[i].sign < 0) s += "^-1";
        }
        return s;
    }

    friend bool operator==(const Word&, const Word&) = default;
};

/// Parses labels such as "g1", "g2^-1*g1^3", "identity". Powers expand to repeated letters.
inline Word parse_word(const std::string& text, std::size_t generator_count) {
    Word w;
    if (text == "identity" || text == "1" || text.empty()) return w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        if (tok.size() < 2 || tok[0] != 'g') throw precondition_error("malformed word factor '" + tok + "'");
        std::size_t caret = tok.find('^');
        std::string idx = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        long exponent = 1;
        std::size_t gen = 0;
        try {
            std::size_t used = 0;
            gen = std::stoul(idx, &used);
            if (used != idx.size()) throw std::invalid_argument(idx);
            if (caret != std::string::npos) {
                std::string e = tok.substr(caret + 1);
                exponent = std::stol(e, &used);
                if (used != e.size()) throw std::invalid_argument(e);
            }
        } catch (const std::logic_error&) {
            throw precondition_error("malformed word factor '" + tok + "'");
        }
        if (gen < 1 || gen > generator_count) throw precondition_error("generator index out of range in '" + tok + "'");
        Word piece;
        for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
            piece.letters.push_back(Letter{gen - 1, exponent < 0 ? -1 : 1});
        w = w * piece;
    }
    return w;
}

/// Pair (B_i, C_i) with alpha_i mapping P^1 - B_i onto C_i.
struct BallPair {
    Ball B;
    Ball C;
};

/// Finitely generated subgroup of PGL_2(Q) with an optional Schottky ball system.
struct SchottkyGroup {
    std::uint64_t p = 0;
    std::vector<MobiusMap> generators;
    std::optional<std::vector<BallPair>> ball_system;

    std::size_t genus() const { return generators.size(); }

    MobiusMap letter_map(const Letter& l) const {
        const MobiusMap& g = generators.at(l.generator);
        return l.sign > 0 ? g : g.inverse();
    }

    MobiusMap evaluate(const Word& w) const {
        MobiusMap m;
        for (const Letter& l : w.letters) m = m * letter_map(l);
        return m;
    }
};

/// A group element together with the reduced word it came from.
struct WordElement {
    Word word;
    MobiusMap map;
};

/// Visits every reduced word of length <= max_length exactly once, by increasing length;
/// within a length, words are ordered lexicographically by (generator, +1 before -1).
/// The visitor returns false to stop early.
inline void for_each_reduced_word(const SchottkyGroup& g, std::size_t max_length,
                                  const std::function<bool(const WordElement&)>& visit) {
    std::vector<Letter> alphabet;
    for (std::size_t i = 0; i < g.genus(); ++i) {
        alphabet.push_back(Letter{i, 1});
        alphabet.push_back(Letter{i, -1});
    }
    std::vector<MobiusMap> letter_maps;
    for (const Letter& l : alphabet) letter_maps.push_back(g.letter_map(l));

    std::vector<WordElement> shell{WordElement{Word{}, MobiusMap::identity()}};
    if (!visit(shell.front())) return;
    for (std::size_t len = 1; len <= max_length && !alphabet.empty(); ++len) {
        std::vector<WordElement> next;
        for (const WordElement& e : shell) {
            for (std::size_t k = 0; k < alphabet.size(); ++k) {
                if (!e.word.letters.empty() && e.word.letters.back() == alphabet[k].inverse()) continue;
                WordElement w{e.word, e.map * letter_maps[k]};
                w.word.letters.push_back(alphabet[k]);
                if (!visit(w)) return;
                next.push_back(std::move(w));
            }
        }
        shell = std::move(next);
    }
}

inline std::vector<WordElement> reduced_words(const SchottkyGroup& g, std::size_t max_length) {
    std::vector<WordElement> out;
    for_each_reduced_word(g, max_length, [&](const WordElement& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

/// Number of reduced words of length exactly l in a free group of rank g.
inline Integer reduced_word_count(std::size_t g, std::size_t l) {
    if (l == 0) return 1;
    if (g == 0) return 0;
    return Integer(static_cast<unsigned long>(2 * g)) * int_pow(Integer(static_cast<unsigned long>(2 * g - 1)), l - 1);
}

} // namespace padic_periods
