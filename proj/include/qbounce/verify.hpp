#pragma once

#include "qbounce/classical.hpp"

#include <cstdint>
#include <string>

// Randomized agreement runs between the closed forms and the oracles,
// shared by the `verify` subcommand and the acceptance suite.
namespace qbounce::verify {

struct Report {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;
    double worst = 0.0;  // largest observed error in the check's own measure
    std::string first_failure;

    bool passed() const { return failures == 0; }
    std::string summary() const;
};

// Endpoint triples x_i, x_f in [x_min, x_max], T in [T_min, T_max]; the
// symmetric model additionally gets random endpoint signs.
struct Sampling {
    double x_min = 0.1;
    double x_max = 30.0;
    double T_min = 0.1;
    double T_max = 30.0;
    double v_max = 10.0;  // launch velocities for the Morse samples
};

// enumerate_paths vs shoot_paths: equal counts and every v_i within 1e-6,
// for both models on each trial.
Report paths(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s = {});

// Closed-form action vs quadrature, 1e-7 relative, every enumerated path.
Report action(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s = {});

// D vs finite differences (1e-4 relative, untrackable branches skipped) and
// D f(T) / M = -1 within 1e-8.
Report vvd(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s = {});

// Closed-form Morse index vs the numeric focus count and the focal-time
// list, for random launches in both models.
Report morse(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s = {});

}  // namespace qbounce::verify
