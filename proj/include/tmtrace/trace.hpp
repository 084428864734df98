#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmtrace/configuration.hpp"

namespace tmtrace {

// Trace symbols are packed into dense ids so words compare and sort cheaply.
//
// S_T alphabet: pairs (symbol read, head state), id = sym * |Q| + state.
// S_H alphabet: A ⊔ (A×Q); bare symbol s has id s, the pair (s,q) has id
// |A| + s*|Q| + q.
using TraceSym = std::uint32_t;
using Word = std::vector<TraceSym>;

inline TraceSym pack_t(const TuringMachine& m, Sym s, State q) {
    return static_cast<TraceSym>(s) * m.n_states() + q;
}
inline TraceSym pack_h_bare(const TuringMachine&, Sym s) { return static_cast<TraceSym>(s); }
inline TraceSym pack_h_pair(const TuringMachine& m, Sym s, State q) {
    return static_cast<TraceSym>(m.n_syms()) + static_cast<TraceSym>(s) * m.n_states() + q;
}

std::string render_sym_t(const TuringMachine& m, TraceSym t);
std::string render_sym_h(const TuringMachine& m, TraceSym t);
std::string render_word(const TuringMachine& m, const Word& w, bool h_alphabet);

struct LanguageSample {
    int n = 0;
    std::vector<Word> words;  // sorted, unique
    std::string machine;
    int window_radius = 0;
    int head_range = 0;

    bool contains(const Word& w) const;
    std::string dump(const TuringMachine& m, bool h_alphabet) const;
};

Word trace_t(const TuringMachine& m, const TapeStatePair& p, int n);
Word trace_h(const TuringMachine& m, const Configuration& c, int n);

// Exact finite languages of the trace subshifts, by exhaustive enumeration.
// radius_override (>= n-1) enlarges the per-run enumeration window; used by
// the window-sufficiency checks.
LanguageSample enumerate_lst(const TuringMachine& m, int n, const Budget& budget = {},
                             int radius_override = -1);
LanguageSample enumerate_lsh(const TuringMachine& m, int n, const Budget& budget = {},
                             int radius_override = -1);

}  // namespace tmtrace
