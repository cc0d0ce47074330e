#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erw/multiplier.hpp"

namespace erw::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitStatFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapability = 3;
inline constexpr int kExitNoFormula = 4;

struct CommonOptions {
    std::string model;
    double p = 0.5;
    std::optional<double> r;  // defaults to p
    std::string start;        // "", "+1", "+1,-1", ...
    bool strict = false;
};

struct SimulateOptions {
    CommonOptions common;
    long n = 0;
    long paths = 1;
    std::uint64_t seed = 1;
    std::string stat = "raw";
    std::string mult;  // "v:w,v:w,..."
    std::uint64_t mult_seed = 0;  // 0 -> seed + 1
    std::string record = "none";
    std::string checkpoints;  // "1,2,4,..."
    std::string out;
    std::string format = "json";
};

struct ExactOptions {
    CommonOptions common;
    long n = 0;
    std::string method = "enum";
    int max_moment = 4;
    std::string out;
    std::string format = "json";
};

struct PredictOptions {
    CommonOptions common;
    std::string quantity;
    long n = 0;
    std::string centering = "auto";
    bool skipfirst_printed_variance = false;
    std::string out;  // empty -> stdout
};

struct VerifyOptions {
    CommonOptions common;
    std::string test;
    double alpha = 0.01;
    long n = 0;
    long paths = 0;
    std::uint64_t seed = 1;
    std::string stat = "auto";
    std::string centering = "auto";
    std::string mult;
    std::uint64_t mult_seed = 0;
    double eps = 0.0;  // 0 -> auto
    double rel_tol = 0.02;
    std::string out;  // empty -> stdout
};

struct SweepOptions {
    CommonOptions common;
    std::string param = "p";
    double from = 0.0;
    double to = 0.0;
    long steps = 0;
    long n = 0;
    long paths = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct ReplayOptions {
    std::string manifest;
    std::string out;
};

// argv (without the program name) is recorded in the manifest for replay
int cmd_simulate(const SimulateOptions& opt, const std::vector<std::string>& argv);
int cmd_exact(const ExactOptions& opt, const std::vector<std::string>& argv);
int cmd_predict(const PredictOptions& opt, const std::vector<std::string>& argv);
int cmd_verify(const VerifyOptions& opt, const std::vector<std::string>& argv);
int cmd_sweep(const SweepOptions& opt, const std::vector<std::string>& argv);
int cmd_replay(const ReplayOptions& opt);

// shared grammar helpers (throw std::invalid_argument on bad input)
StepMultiplier parse_multiplier(const std::string& text);
std::vector<int> parse_start(const std::string& text);

}  // namespace erw::cli
