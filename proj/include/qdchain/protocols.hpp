// protocols.hpp — Time-dependent coupling programs: pulse primitives,
// per-link schedules, and the three complete-transfer protocols
// (sequential pi pulses, collective spin-coupling pi pulse, and
// counterintuitively ordered adiabatic passage).

#pragma once

#include <functional>
#include <vector>

#include "qdchain/chain.hpp"

namespace qdchain {

enum class PulseShape { rectangular, gaussian };

// One pulse on one link. Rectangular pulses hold their amplitude on
// [on, off); gaussian pulses evaluate amplitude*exp(-(tau-center)^2/width^2)
// on the support and are hard zero outside it (support spans center +/- 3
// widths, so the clipped tail is below 1.3e-4 of the peak).
struct Pulse {
    PulseShape shape{PulseShape::rectangular};
    double amplitude{0.0};
    double center{0.0};
    double width{0.0};
    double on{0.0};
    double off{0.0};

    static Pulse rectangular(double amplitude, double on, double off);
    static Pulse gaussian(double amplitude, double center, double width);

    double value(double tau) const;
};

// Immutable per-link pulse program over [0, total_duration]. Sampled link
// values are the sum of the active pulses on that link.
class Schedule {
public:
    Schedule(int n_links, double total_duration);

    // Validates that the pulse support lies within [0, total].
    void add_pulse(int link, const Pulse& pulse);

    int n_links() const { return n_links_; }
    double total_duration() const { return total_; }
    const std::vector<std::vector<Pulse>>& link_pulses() const { return pulses_; }

    // Sorted unique pulse-edge times; the integrator splits steps here.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // Copy with every pulse amplitude transformed by
    // fn(link, pulse_index, amplitude); used for disorder sweeps.
    Schedule map_amplitudes(
        const std::function<double(int, int, double)>& fn) const;

private:
    int n_links_;
    double total_;
    std::vector<std::vector<Pulse>> pulses_;
    std::vector<double> breakpoints_;
};

// Per-link sum of active pulse values at tau; tau must lie in [0, total].
CouplingVector sample_couplings(const Schedule& schedule, double tau);

// Every link holds its static value over the whole window [0, duration].
Schedule static_schedule(const CouplingVector& couplings, double duration);

// All links carry the spin-model rates t*sqrt((n-j)j) simultaneously for
// the transfer time pi/(2t); switch-on and switch-off are sudden.
Schedule collective_pi_protocol(int n, double t);

// Link j pulses alone with amplitude t_j for a duration pi/(2 t_j), links
// firing in order 1..N-1 back to back. Rejects zero couplings.
Schedule sequential_pi_protocol(const CouplingVector& couplings);

// Counterintuitive two-family gaussian program for odd N: all even links
// share a pulse centered at total/2 - delay/2, all odd links one centered at
// total/2 + delay/2, both of the given width and peak amplitude. Supports
// are clipped to [0, total].
Schedule ctap_protocol(int n, double t_max, double width, double delay,
                       double total);

// Default pulse geometry: delay = 1.2*width, total = 2*delay + 6*width,
// which keeps both pulses below 1e-4 of peak at the window edges.
Schedule ctap_protocol(int n, double t_max, double width);

double ctap_default_delay(double width);
double ctap_default_total(double width);

}  // namespace qdchain
