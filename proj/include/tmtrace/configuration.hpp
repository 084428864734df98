#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmtrace/machine.hpp"

namespace tmtrace {

struct Head {
    State state;
    long long pos;
    bool operator==(const Head&) const = default;
};

// A tape given exactly: a finite window over [lo, hi] with spatially periodic
// padding words repeated to both sides, plus an optional head. Serves as the
// point of X (head as state+position), of X_H (head marked on the tape, or
// absent), and of X_T through TapeStatePair.
class Configuration {
public:
    Configuration(long long lo, std::vector<Sym> window,
                  std::vector<Sym> left_pad, std::vector<Sym> right_pad,
                  std::optional<Head> head);

    // Uniform tape filled with one symbol.
    static Configuration uniform(Sym fill, std::optional<Head> head);

    long long lo() const { return lo_; }
    long long hi() const { return lo_ + static_cast<long long>(window_.size()) - 1; }
    const std::vector<Sym>& window() const { return window_; }
    const std::vector<Sym>& left_pad() const { return left_pad_; }
    const std::vector<Sym>& right_pad() const { return right_pad_; }
    const std::optional<Head>& head() const { return head_; }

    Sym at(long long i) const;
    void set(long long i, Sym s);           // materializes the window up to i
    void set_head(std::optional<Head> h) { head_ = h; }

    // Grows the window so [a, b] is materialized.
    void materialize(long long a, long long b);

    Configuration shifted(long long k) const;  // cell i of result = cell i+k

    // Exact pointwise equality of tapes and heads (pads compared via their
    // common period beyond the windows).
    bool same_point(const Configuration& other) const;

    bool agrees_on(const Configuration& other, long long a, long long b) const;

    void check_alphabet(const TuringMachine& m) const;

    nlohmann::json to_json(const TuringMachine& m) const;
    static Configuration from_json(const TuringMachine& m, const nlohmann::json& j);

    std::string render(const TuringMachine& m, long long a, long long b) const;

private:
    long long lo_;
    std::vector<Sym> window_;
    std::vector<Sym> left_pad_;
    std::vector<Sym> right_pad_;
    std::optional<Head> head_;
};

// Moving-tape point: a configuration whose head sits at cell 0.
struct TapeStatePair {
    Configuration config;

    explicit TapeStatePair(Configuration c);
    static TapeStatePair recenter(const Configuration& c);  // the factor map Psi
    State state() const { return config.head()->state; }
};

Configuration step_t(const TuringMachine& m, const Configuration& c);
Configuration step_th(const TuringMachine& m, const Configuration& c);
TapeStatePair step_tt(const TuringMachine& m, const TapeStatePair& p);
Configuration shift_config(const Configuration& c, long long k);

}  // namespace tmtrace
