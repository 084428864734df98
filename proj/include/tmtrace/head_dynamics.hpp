#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmtrace/configuration.hpp"

namespace tmtrace {

enum class CycleKind { RightCycle, LeftCycle, RightZigzag, LeftZigzag, NCycle };

std::string to_string(CycleKind k);

// Witness for a cycle, zigzag or n-cycle, replayable from the stored
// configuration: stamps has 3 entries for cycles/zigzags and 2n+1 for
// n-cycles.
struct CycleWitness {
    CycleKind kind;
    long long base = 0;
    long long width = 0;
    std::vector<long long> stamps;
    Configuration config;

    nlohmann::json to_json(const TuringMachine& m) const;
    bool replay(const TuringMachine& m) const;
};

struct PreperiodicityCertificate {
    std::uint64_t transient = 0;
    std::uint64_t period = 0;
    // the repeated full machine state
    long long head_pos = 0;
    State head_state = 0;
    long long span_lo = 0;
    long long span_hi = 0;
    std::vector<Sym> span_contents;

    nlohmann::json to_json(const TuringMachine& m) const;
};

// Head positions of T^t for t = 0..horizon.
std::vector<long long> position_trace(const TuringMachine& m, const Configuration& c,
                                      long long horizon);

std::optional<CycleWitness> find_cycle(const TuringMachine& m, const Configuration& c,
                                       long long max_width, long long horizon);

std::optional<CycleWitness> find_zigzag(const TuringMachine& m, long long min_width,
                                        int window_radius, long long horizon,
                                        const Budget& budget = {}, bool sweep_pads = false);

std::optional<CycleWitness> find_n_cycle(const TuringMachine& m, const Configuration& c,
                                         int n, long long width, long long horizon);

// Pure scan over a precomputed position trace; used by the property suites.
bool has_n_cycle(const std::vector<long long>& positions, int n, long long width);

std::set<long long> visit_times(const TuringMachine& m, const Configuration& c,
                                long long cell, long long horizon);

std::uint64_t visit_bound(int n, int width, int alphabet_size);

std::optional<PreperiodicityCertificate> detect_preperiodicity(const TuringMachine& m,
                                                               const Configuration& c,
                                                               std::uint64_t step_budget);

std::uint64_t isolation_length(const TuringMachine& m, int period);

bool check_window_stability(const TuringMachine& m, const Configuration& c, int k, int mrad,
                            long long horizon, const Budget& budget = {});

}  // namespace tmtrace
