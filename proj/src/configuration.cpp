#include "tmtrace/configuration.hpp"

#include <algorithm>
#include <numeric>

namespace tmtrace {

Configuration::Configuration(long long lo, std::vector<Sym> window,
                             std::vector<Sym> left_pad, std::vector<Sym> right_pad,
                             std::optional<Head> head)
    : lo_(lo), window_(std::move(window)),
      left_pad_(std::move(left_pad)), right_pad_(std::move(right_pad)), head_(head) {
    if (window_.empty()) throw ValidationError("configuration window must be nonempty");
    if (left_pad_.empty() || right_pad_.empty())
        throw ValidationError("pad words must be nonempty");
}

Configuration Configuration::uniform(Sym fill, std::optional<Head> head) {
    return Configuration(0, {fill}, {fill}, {fill}, head);
}

Sym Configuration::at(long long i) const {
    if (i >= lo_ && i <= hi()) return window_[static_cast<std::size_t>(i - lo_)];
    if (i < lo_) {
        long long off = lo_ - 1 - i;  // 0 means the cell adjacent to the window
        auto n = static_cast<long long>(left_pad_.size());
        return left_pad_[static_cast<std::size_t>(n - 1 - (off % n))];
    }
    long long off = i - hi() - 1;
    auto n = static_cast<long long>(right_pad_.size());
    return right_pad_[static_cast<std::size_t>(off % n)];
}

void Configuration::materialize(long long a, long long b) {
    if (a < lo_) {
        long long k = lo_ - a;
        std::vector<Sym> prefix;
        prefix.reserve(static_cast<std::size_t>(k));
        for (long long i = a; i < lo_; ++i) prefix.push_back(at(i));
        window_.insert(window_.begin(), prefix.begin(), prefix.end());
        // keep the leftward tiling aligned with the new edge
        auto n = static_cast<long long>(left_pad_.size());
        long long rot = k % n;
        std::rotate(left_pad_.begin(), left_pad_.end() - rot, left_pad_.end());
        lo_ = a;
    }
    if (b > hi()) {
        long long old_hi = hi();
        long long k = b - old_hi;
        std::vector<Sym> suffix;
        suffix.reserve(static_cast<std::size_t>(k));
        for (long long i = old_hi + 1; i <= b; ++i) suffix.push_back(at(i));
        window_.insert(window_.end(), suffix.begin(), suffix.end());
        auto n = static_cast<long long>(right_pad_.size());
        long long rot = k % n;
        std::rotate(right_pad_.begin(), right_pad_.begin() + rot, right_pad_.end());
    }
}

void Configuration::set(long long i, Sym s) {
    materialize(std::min(i, lo_), std::max(i, hi()));
    window_[static_cast<std::size_t>(i - lo_)] = s;
}

Configuration Configuration::shifted(long long k) const {
    Configuration out = *this;
    out.lo_ -= k;
    if (out.head_) out.head_->pos -= k;
    return out;
}

bool Configuration::same_point(const Configuration& other) const {
    if (head_.has_value() != other.head_.has_value()) return false;
    if (head_ && !(*head_ == *other.head_)) return false;
    long long a = std::min(lo_, other.lo_);
    long long b = std::max(hi(), other.hi());
    long long ll = std::lcm<long long>(left_pad_.size(), other.left_pad_.size());
    long long rl = std::lcm<long long>(right_pad_.size(), other.right_pad_.size());
    return agrees_on(other, a - ll, b + rl);
}

bool Configuration::agrees_on(const Configuration& other, long long a, long long b) const {
    for (long long i = a; i <= b; ++i)
        if (at(i) != other.at(i)) return false;
    return true;
}

void Configuration::check_alphabet(const TuringMachine& m) const {
    auto ok = [&](Sym s) { return s >= 0 && s < m.n_syms(); };
    for (Sym s : window_)
        if (!ok(s)) throw ValidationError("window symbol outside the machine alphabet");
    for (Sym s : left_pad_)
        if (!ok(s)) throw ValidationError("left pad symbol outside the machine alphabet");
    for (Sym s : right_pad_)
        if (!ok(s)) throw ValidationError("right pad symbol outside the machine alphabet");
    if (head_ && (head_->state < 0 || head_->state >= m.n_states()))
        throw ValidationError("head state outside the machine state set");
}

nlohmann::json Configuration::to_json(const TuringMachine& m) const {
    auto names = [&](const std::vector<Sym>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (Sym s : v) a.push_back(m.sym_name(s));
        return a;
    };
    nlohmann::json j{{"lo", lo_},
                     {"window", names(window_)},
                     {"left_pad", names(left_pad_)},
                     {"right_pad", names(right_pad_)}};
    if (head_)
        j["head"] = {{"state", m.state_name(head_->state)}, {"pos", head_->pos}};
    else
        j["head"] = nullptr;
    return j;
}

Configuration Configuration::from_json(const TuringMachine& m, const nlohmann::json& j) {
    auto syms = [&](const nlohmann::json& a) {
        std::vector<Sym> v;
        for (const auto& s : a) v.push_back(m.sym_id(s.get<std::string>()));
        return v;
    };
    std::optional<Head> head;
    if (j.contains("head") && !j.at("head").is_null()) {
        const auto& h = j.at("head");
        head = Head{m.state_id(h.at("state").get<std::string>()), h.at("pos").get<long long>()};
    }
    return Configuration(j.at("lo").get<long long>(), syms(j.at("window")),
                         syms(j.at("left_pad")), syms(j.at("right_pad")), head);
}

std::string Configuration::render(const TuringMachine& m, long long a, long long b) const {
    std::string out;
    for (long long i = a; i <= b; ++i) {
        if (i > a) out += ' ';
        if (head_ && head_->pos == i)
            out += "[" + m.sym_name(at(i)) + "," + m.state_name(head_->state) + "]";
        else
            out += m.sym_name(at(i));
    }
    return out;
}

TapeStatePair::TapeStatePair(Configuration c) : config(std::move(c)) {
    if (!config.head() || config.head()->pos != 0)
        throw ValidationError("TapeStatePair requires a head at position 0");
}

TapeStatePair TapeStatePair::recenter(const Configuration& c) {
    if (!c.head()) throw ValidationError("recenter requires a head");
    return TapeStatePair(c.shifted(c.head()->pos));
}

Configuration step_t(const TuringMachine& m, const Configuration& c) {
    if (!c.head()) throw ValidationError("step_t requires a head");
    Configuration out = c;
    Head h = *c.head();
    Sym s = out.at(h.pos);
    auto r = m.rule(s, h.state);
    out.set(h.pos, r.write);
    out.set_head(Head{r.next, h.pos + r.move});
    return out;
}

Configuration step_th(const TuringMachine& m, const Configuration& c) {
    if (!c.head()) return c;
    return step_t(m, c);
}

TapeStatePair step_tt(const TuringMachine& m, const TapeStatePair& p) {
    Configuration c = step_t(m, p.config);
    return TapeStatePair(c.shifted(c.head()->pos));
}

Configuration shift_config(const Configuration& c, long long k) {
    return c.shifted(k);
}

}  // namespace tmtrace
