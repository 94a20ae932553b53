#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lpsld::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDomain = 2,
    kConvergence = 3,
    kIo = 4,
};

struct RunConfig {
    double p = 2.0;
    std::vector<double> a{0.5};
    std::vector<int> n{20};
    std::int64_t reps = 100;
    std::uint64_t seed = 1;
    std::uint64_t theta_seed = 1;
    int quad_order = 64;
    std::string format = "csv";
    std::string out;                 // empty: stdout
    std::optional<int> threads;
    std::vector<double> theta;       // explicit direction (oracle, sld, is, mc)
    int k = 5;                       // figure2: number of direction seeds
    std::string kappa = "laplace";   // laplace | printed
};

// null cells render as an empty CSV field / JSON null
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    int exit_code = kOk;  // worst row status
};

// Throws lpsld::DomainError on invalid configurations.
void validate(const RunConfig& cfg, const std::string& command);

Table cmd_rate(const RunConfig& cfg);
Table cmd_compare(const RunConfig& cfg);
Table cmd_sld(const RunConfig& cfg);
Table cmd_is(const RunConfig& cfg);
Table cmd_mc(const RunConfig& cfg);
Table cmd_oracle(const RunConfig& cfg);
Table cmd_clt_cov(const RunConfig& cfg);
Table cmd_clt_sim(const RunConfig& cfg);
Table cmd_figure2(const RunConfig& cfg);
Table cmd_extremize(const RunConfig& cfg);

Table dispatch(const std::string& command, const RunConfig& cfg);

std::string format_cell(const Cell& c);
std::string render_csv(const Table& t);
std::string render_json(const std::string& command, const RunConfig& cfg, const Table& t);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpsld::cli
