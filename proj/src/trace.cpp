#include "tmtrace/trace.hpp"

#include <algorithm>
#include <cmath>

namespace tmtrace {

std::string render_sym_t(const TuringMachine& m, TraceSym t) {
    Sym s = static_cast<Sym>(t / m.n_states());
    State q = static_cast<State>(t % m.n_states());
    return "(" + m.sym_name(s) + "," + m.state_name(q) + ")";
}

std::string render_sym_h(const TuringMachine& m, TraceSym t) {
    if (t < static_cast<TraceSym>(m.n_syms())) return m.sym_name(static_cast<Sym>(t));
    TraceSym r = t - m.n_syms();
    Sym s = static_cast<Sym>(r / m.n_states());
    State q = static_cast<State>(r % m.n_states());
    return "(" + m.sym_name(s) + "," + m.state_name(q) + ")";
}

std::string render_word(const TuringMachine& m, const Word& w, bool h_alphabet) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ',';
        out += h_alphabet ? render_sym_h(m, w[i]) : render_sym_t(m, w[i]);
    }
    return out;
}

bool LanguageSample::contains(const Word& w) const {
    return std::binary_search(words.begin(), words.end(), w);
}

std::string LanguageSample::dump(const TuringMachine& m, bool h_alphabet) const {
    std::string out;
    for (const auto& w : words) {
        out += render_word(m, w, h_alphabet);
        out += '\n';
    }
    return out;
}

Word trace_t(const TuringMachine& m, const TapeStatePair& p, int n) {
    Word w;
    w.reserve(n);
    TapeStatePair cur = p;
    for (int t = 0; t < n; ++t) {
        w.push_back(pack_t(m, cur.config.at(0), cur.state()));
        if (t + 1 < n) cur = step_tt(m, cur);
    }
    return w;
}

Word trace_h(const TuringMachine& m, const Configuration& c, int n) {
    Word w;
    w.reserve(n);
    Configuration cur = c;
    for (int t = 0; t < n; ++t) {
        if (cur.head() && cur.head()->pos == 0)
            w.push_back(pack_h_pair(m, cur.at(0), cur.head()->state));
        else
            w.push_back(pack_h_bare(m, cur.at(0)));
        if (t + 1 < n) cur = step_th(m, cur);
    }
    return w;
}

namespace {

// Iterates over all assignments of `cells` symbols from an alphabet of size k.
struct SymGrid {
    std::vector<Sym> v;
    int k;
    bool first = true;
    SymGrid(int cells, int k) : v(cells, 0), k(k) {}
    bool next() {
        if (first) {
            first = false;
            return true;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (++v[i] < k) return true;
            v[i] = 0;
        }
        return false;
    }
};

std::uint64_t ipow_checked(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > cap / base + 1) return cap + 1;
        r *= base;
        if (r > cap) return cap + 1;
    }
    return r;
}

void finish(LanguageSample& s) {
    std::sort(s.words.begin(), s.words.end());
    s.words.erase(std::unique(s.words.begin(), s.words.end()), s.words.end());
}

}  // namespace

LanguageSample enumerate_lst(const TuringMachine& m, int n, const Budget& budget,
                             int radius_override) {
    if (n < 1) throw ValidationError("enumerate_lst requires n >= 1");
    int radius = radius_override >= 0 ? radius_override : n - 1;
    if (radius < n - 1) throw ValidationError("window radius too small for the trace length");
    int cells = 2 * radius + 1;
    std::uint64_t count =
        ipow_checked(m.n_syms(), cells, budget.max_simulated_configs) * m.n_states();
    if (count > budget.max_simulated_configs)
        throw BudgetExceeded("enumerate_lst: |A|^(2r+1)*|Q| exceeds the configured budget");

    LanguageSample out;
    out.n = n;
    out.machine = m.name();
    out.window_radius = radius;
    out.head_range = 0;
    for (State q = 0; q < m.n_states(); ++q) {
        SymGrid grid(cells, m.n_syms());
        while (grid.next()) {
            Configuration c(-radius, grid.v, {0}, {0}, Head{q, 0});
            out.words.push_back(trace_t(m, TapeStatePair(c), n));
        }
    }
    finish(out);
    return out;
}

LanguageSample enumerate_lsh(const TuringMachine& m, int n, const Budget& budget,
                             int radius_override) {
    if (n < 1) throw ValidationError("enumerate_lsh requires n >= 1");
    int radius = radius_override >= 0 ? radius_override : n - 1;
    if (radius < n - 1) throw ValidationError("window radius too small for the trace length");
    int cells = 2 * radius + 1;
    std::uint64_t per_head =
        ipow_checked(m.n_syms(), cells, budget.max_simulated_configs) * m.n_states();
    std::uint64_t count = per_head * (2 * static_cast<std::uint64_t>(n) - 1);
    if (per_head > budget.max_simulated_configs || count > budget.max_simulated_configs)
        throw BudgetExceeded("enumerate_lsh: enumeration exceeds the configured budget");

    LanguageSample out;
    out.n = n;
    out.machine = m.name();
    out.window_radius = radius;
    out.head_range = n - 1;

    // Headless configurations, and heads too far to reach cell 0 within n steps,
    // contribute exactly the constant words.
    for (Sym s = 0; s < m.n_syms(); ++s) out.words.push_back(Word(n, pack_h_bare(m, s)));

    // A head starting at h with |h| <= n-1 touches only cells within radius of h,
    // and cell 0 lies inside that window, so this enumeration is exhaustive.
    for (long long h = -(n - 1); h <= n - 1; ++h) {
        for (State q = 0; q < m.n_states(); ++q) {
            SymGrid grid(cells, m.n_syms());
            while (grid.next()) {
                Configuration c(h - radius, grid.v, {0}, {0}, Head{q, h});
                out.words.push_back(trace_h(m, c, n));
            }
        }
    }
    finish(out);
    return out;
}

}  // namespace tmtrace
