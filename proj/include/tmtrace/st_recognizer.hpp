#pragma once

#include "tmtrace/automata.hpp"
#include "tmtrace/trace.hpp"

namespace tmtrace {

// Window over cells [-N, N] together with a state and a head position inside
// the window. These are the u, v, b, w anchors of the recognizer pieces.
struct PartialConfiguration {
    int half_width = 0;        // N
    std::vector<Sym> window;   // length 2N+1, index i+N <-> cell i
    State state = 0;
    int pos = 0;

    PartialConfiguration() = default;
    PartialConfiguration(int n, std::vector<Sym> w, State q, int p);

    Sym cell(int i) const { return window[static_cast<std::size_t>(i + half_width)]; }
    void set_cell(int i, Sym s) { window[static_cast<std::size_t>(i + half_width)] = s; }

    bool operator==(const PartialConfiguration&) const = default;
    bool operator<(const PartialConfiguration& o) const;

    nlohmann::json to_json(const TuringMachine& m) const;
    static PartialConfiguration from_json(const TuringMachine& m, const nlohmann::json& j);
};

// Is u reachable, through a head-in-the-open-window run, from some partial
// configuration with head at 0? (The lemma's "there exists u' with
// C_{u',u} nonempty".)
bool c_reachable(const TuringMachine& m, int n, const PartialConfiguration& u,
                 const Budget& budget = {});

// The window DFA C_{u,v} over A x Q: words of runs from [u] to [v] whose head
// stays strictly inside (-N, N) at every consumed step.
Dfa build_c(const TuringMachine& m, int n, const PartialConfiguration& u,
            const PartialConfiguration& v, const Budget& budget = {});

// The one-way stack machines of the appendix table. Requires N >= 1.
Dpda build_r(const TuringMachine& m, int n, const PartialConfiguration& u,
             const PartialConfiguration& v, const Budget& budget = {});
Dpda build_l(const TuringMachine& m, int n, const PartialConfiguration& u,
             const PartialConfiguration& v, const Budget& budget = {});

std::uint64_t zigzag_bound_from_dpda(std::uint64_t n_states, std::uint64_t n_stack);

// Membership decider for the nine-case union of phase languages at width N:
// a central phase may keep the head anywhere in [-N, N]; an excursion episode
// opens when the head commits past +-(N+1) and closes on return to 0; at most
// one right and one left episode are allowed.
struct PhaseDecider {
    const TuringMachine* machine = nullptr;
    int width = 0;

    nlohmann::json manifest() const;
};

PhaseDecider make_phase_decider(const TuringMachine& m, int n);

bool st_membership(const PhaseDecider& d, const Word& word);

// All words the decider accepts at the given length (its language is closed
// under prefixes, so rejected prefixes prune the search).
std::vector<Word> st_accepted_words(const PhaseDecider& d, int length,
                                    const Budget& budget = {});

struct LengthComparison {
    int n = 0;
    std::size_t oracle_size = 0;
    std::size_t recognizer_size = 0;
    std::vector<Word> missing;  // oracle words the recognizer rejects
    std::vector<Word> extra;    // recognizer words outside the oracle
    bool equal() const { return missing.empty() && extra.empty(); }
};

struct EquivalenceReport {
    std::vector<LengthComparison> lengths;
    bool all_equal() const;
    nlohmann::json to_json(const TuringMachine& m, bool h_alphabet) const;
};

EquivalenceReport st_equivalence_check(const TuringMachine& m, int n, int n_max,
                                       const Budget& budget = {});

}  // namespace tmtrace
