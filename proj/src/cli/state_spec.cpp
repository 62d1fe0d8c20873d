#include <cerrno>
#include <cstdlib>

#include "telefid/channels.hpp"
#include "telefid/cli.hpp"
#include "telefid/errors.hpp"

namespace telefid::cli {

namespace {

double to_double(const std::string& s) {
    if (s.empty()) throw UsageError("empty number in state spec");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

void expect_count(const std::string& kind, const std::vector<double>& v, size_t n) {
    if (v.size() != n)
        throw UsageError(kind + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(v.size()));
}

}  // namespace

std::vector<double> parse_numbers(const std::string& csv) {
    std::vector<double> out;
    size_t start = 0;
    while (true) {
        const size_t comma = csv.find(',', start);
        out.push_back(to_double(csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

DensityMatrix parse_state(const std::string& spec) {
    const size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> a;
    if (colon != std::string::npos) a = parse_numbers(spec.substr(colon + 1));
    try {
        if (kind == "werner") {
            expect_count(kind, a, 1);
            return werner(a[0]);
        }
        if (kind == "adc") {
            expect_count(kind, a, 1);
            return adc_choi(a[0]);
        }
        if (kind == "pure") {
            expect_count(kind, a, 1);
            return pure(a[0]);
        }
        if (kind == "belldiag") {
            expect_count(kind, a, 4);
            return bell_diagonal({a[0], a[1], a[2], a[3]});
        }
        if (kind == "bell") {
            expect_count(kind, a, 1);
            const int i = static_cast<int>(a[0]);
            if (i != a[0] || i < 0 || i > 3) throw UsageError("bell index must be 0..3");
            return bell_state(i);
        }
        if (kind == "mixed") {
            expect_count(kind, a, 0);
            return maximally_mixed();
        }
        if (kind == "adcpure") {
            expect_count(kind, a, 2);
            return adc_on_pure(a[0], a[1]);
        }
    } catch (const DomainError& e) {
        throw UsageError("state '" + spec + "': " + e.what());
    }
    throw UsageError("unknown state kind '" + kind + "' (werner, adc, pure, belldiag, bell, mixed, adcpure)");
}

}  // namespace telefid::cli
