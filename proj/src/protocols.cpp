// protocols.cpp — pulse primitives, schedules, and the transfer protocols.

#include "qdchain/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdchain {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGaussianSupportWidths = 3.0;

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace

Pulse Pulse::rectangular(double amplitude, double on, double off) {
    require(std::isfinite(amplitude) && amplitude >= 0.0,
            "Pulse: amplitude must be finite and >= 0");
    require(std::isfinite(on) && std::isfinite(off) && off > on,
            "Pulse: support must satisfy off > on");
    Pulse p;
    p.shape = PulseShape::rectangular;
    p.amplitude = amplitude;
    p.center = 0.5 * (on + off);
    p.width = off - on;
    p.on = on;
    p.off = off;
    return p;
}

Pulse Pulse::gaussian(double amplitude, double center, double width) {
    require(std::isfinite(amplitude) && amplitude >= 0.0,
            "Pulse: amplitude must be finite and >= 0");
    require(std::isfinite(center) && std::isfinite(width) && width > 0.0,
            "Pulse: width must be positive");
    Pulse p;
    p.shape = PulseShape::gaussian;
    p.amplitude = amplitude;
    p.center = center;
    p.width = width;
    p.on = center - kGaussianSupportWidths * width;
    p.off = center + kGaussianSupportWidths * width;
    return p;
}

double Pulse::value(double tau) const {
    if (tau < on || tau >= off) return 0.0;
    if (shape == PulseShape::rectangular) return amplitude;
    const double arg = (tau - center) / width;
    return amplitude * std::exp(-arg * arg);
}

Schedule::Schedule(int n_links, double total_duration)
    : n_links_(n_links), total_(total_duration), pulses_(static_cast<size_t>(std::max(n_links, 0))) {
    require(n_links_ >= 1, "Schedule: needs at least one link");
    require(std::isfinite(total_) && total_ > 0.0, "Schedule: total duration must be positive");
}

void Schedule::add_pulse(int link, const Pulse& pulse) {
    require(link >= 0 && link < n_links_, "Schedule: link index out of range");
    require(pulse.on >= 0.0 && pulse.off <= total_,
            "Schedule: pulse support must lie within [0, total]");
    pulses_[static_cast<size_t>(link)].push_back(pulse);
    for (double edge : {pulse.on, pulse.off}) {
        auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), edge);
        if (it == breakpoints_.end() || *it != edge) breakpoints_.insert(it, edge);
    }
}

Schedule Schedule::map_amplitudes(
    const std::function<double(int, int, double)>& fn) const {
    Schedule out(n_links_, total_);
    for (int link = 0; link < n_links_; ++link) {
        const auto& pulses = pulses_[static_cast<size_t>(link)];
        for (int idx = 0; idx < static_cast<int>(pulses.size()); ++idx) {
            Pulse p = pulses[static_cast<size_t>(idx)];
            p.amplitude = fn(link, idx, p.amplitude);
            require(std::isfinite(p.amplitude) && p.amplitude >= 0.0,
                    "Schedule: mapped amplitude must be finite and >= 0");
            out.add_pulse(link, p);
        }
    }
    return out;
}

CouplingVector sample_couplings(const Schedule& schedule, double tau) {
    if (!(tau >= 0.0 && tau <= schedule.total_duration()))
        throw std::invalid_argument("sample_couplings: tau outside [0, total]");
    std::vector<double> values(static_cast<size_t>(schedule.n_links()), 0.0);
    const auto& pulses = schedule.link_pulses();
    for (int link = 0; link < schedule.n_links(); ++link)
        for (const Pulse& p : pulses[static_cast<size_t>(link)])
            values[static_cast<size_t>(link)] += p.value(tau);
    return CouplingVector(std::move(values));
}

Schedule static_schedule(const CouplingVector& couplings, double duration) {
    require(std::isfinite(duration) && duration > 0.0,
            "static_schedule: duration must be positive");
    Schedule schedule(couplings.size(), duration);
    for (int link = 0; link < couplings.size(); ++link)
        if (couplings[link] > 0.0)
            schedule.add_pulse(link, Pulse::rectangular(couplings[link], 0.0, duration));
    return schedule;
}

Schedule collective_pi_protocol(int n, double t) {
    require(n >= 2, "collective_pi_protocol: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "collective_pi_protocol: t must be positive");
    const double duration = kPi / (2.0 * t);
    return static_schedule(spin_couplings(n, t), duration);
}

Schedule sequential_pi_protocol(const CouplingVector& couplings) {
    for (int link = 0; link < couplings.size(); ++link)
        require(couplings[link] > 0.0,
                "sequential_pi_protocol: every coupling must be positive");

    // Pulse j lasts pi/(2 t_j); boundaries accumulate so supports abut.
    std::vector<double> boundaries(static_cast<size_t>(couplings.size()) + 1, 0.0);
    for (int link = 0; link < couplings.size(); ++link)
        boundaries[static_cast<size_t>(link) + 1] =
            boundaries[static_cast<size_t>(link)] + kPi / (2.0 * couplings[link]);

    Schedule schedule(couplings.size(), boundaries.back());
    for (int link = 0; link < couplings.size(); ++link)
        schedule.add_pulse(link,
                           Pulse::rectangular(couplings[link],
                                              boundaries[static_cast<size_t>(link)],
                                              boundaries[static_cast<size_t>(link) + 1]));
    return schedule;
}

Schedule ctap_protocol(int n, double t_max, double width, double delay, double total) {
    require(n >= 3 && n % 2 == 1, "ctap_protocol: n must be odd and >= 3");
    require(t_max > 0.0 && std::isfinite(t_max), "ctap_protocol: t_max must be positive");
    require(width > 0.0 && std::isfinite(width), "ctap_protocol: width must be positive");
    require(std::isfinite(total) && total > 0.0, "ctap_protocol: total must be positive");
    require(std::isfinite(delay), "ctap_protocol: delay must be finite");
    require(delay < total, "ctap_protocol: delay must be smaller than total");

    const double center_even = 0.5 * total - 0.5 * delay;
    const double center_odd = 0.5 * total + 0.5 * delay;
    // Counterintuitive ordering: the even family (links far from the
    // occupied end) must peak before the odd family.
    require(center_even < center_odd,
            "ctap_protocol: ordering violation, even-family pulse must precede odd");

    Schedule schedule(n - 1, total);
    for (int link = 0; link < n - 1; ++link) {
        const bool even_family = (link % 2 == 1);  // 1-based links 2, 4, ...
        Pulse p = Pulse::gaussian(t_max, even_family ? center_even : center_odd, width);
        p.on = std::max(p.on, 0.0);
        p.off = std::min(p.off, total);
        require(p.off > p.on, "ctap_protocol: pulse support outside the window");
        schedule.add_pulse(link, p);
    }
    return schedule;
}

double ctap_default_delay(double width) { return 1.2 * width; }

double ctap_default_total(double width) {
    return 2.0 * ctap_default_delay(width) + 6.0 * width;
}

Schedule ctap_protocol(int n, double t_max, double width) {
    return ctap_protocol(n, t_max, width, ctap_default_delay(width),
                         ctap_default_total(width));
}

}  // namespace qdchain
