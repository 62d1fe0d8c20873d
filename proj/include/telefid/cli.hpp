#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "telefid/states.hpp"

namespace telefid::cli {

// Bad command line; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// werner:0.4 | adc:0.8 | pure:0.75 | belldiag:0.7,0.1,0.1,0.1 | bell:0 | mixed | adcpure:0.8,0.75
DensityMatrix parse_state(const std::string& spec);
std::vector<double> parse_numbers(const std::string& csv);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_number(double v);  // %.12g
std::string to_csv(const Table& t);
// One polyline per column after the first; the first column is the x axis.
std::string to_svg(const Table& t, const std::string& title);
// Writes csv or svg to `path`, or stdout when path is empty or "-".
void emit(const Table& t, const std::string& format, const std::string& path, const std::string& title);

// Rows are computed on a small thread pool and stored in input order.
std::vector<std::vector<double>> parallel_rows(int n, const std::function<std::vector<double>(int)>& row);

struct FigureOptions {
    int points = 101;
    bool sdp = true;
    double tol = 1e-8;
};

const std::vector<std::string>& figure_names();
Table figure(const std::string& name, const FigureOptions& opts);

struct SweepSpec {
    std::string command;                    // fef, optfef, bounds, protocol1..3, restricted_sep, network
    std::map<std::string, std::string> fixed;  // state_ab, state_bc, and numeric parameters
    std::string var = "x";
    double from = 0, to = 1;
    int steps = 11;
    std::vector<std::string> outputs;       // empty means all columns of the command
    std::string out_path;
    std::string format = "csv";
};

std::vector<std::string> sweep_columns(const std::string& command);
void validate(const SweepSpec& spec);
Table run_sweep(const SweepSpec& spec, double tol = 1e-8);
// Replaces every "{var}" in `text` by the value printed with %.17g.
std::string substitute(const std::string& text, const std::string& var, double value);

// Entry point of the telefid executable.
int run(int argc, char** argv);

}  // namespace telefid::cli
