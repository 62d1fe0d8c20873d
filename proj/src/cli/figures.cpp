#include <cmath>
#include <iostream>

#include "columns.hpp"
#include "telefid/channels.hpp"
#include "telefid/cli.hpp"
#include "telefid/network.hpp"

namespace telefid::cli {

namespace {

const double kGolden = (std::sqrt(5.0) - 1) / 2;

struct Setup {
    std::string xname;
    double from, to;
    std::function<DensityMatrix(double)> rho, sigma;
    bool protocol3 = false;  // mag figures: P1, P2, P3 and no F1_star
};

Setup setup_for(const std::string& name) {
    const auto adc_x = [](double p) { return adc_choi(p); };
    if (name == "figpvp")
        return {"alpha0", 0.5, 0.99, [](double a) { return pure(a); }, [](double) { return pure(0.75); }};
    if (name == "figbdvbd") {
        const auto bd = [](double p) { return bell_diagonal({p, (1 - p) / 3, (1 - p) / 3, (1 - p) / 3}); };
        return {"p", 0.0, 1.0, bd, bd};
    }
    if (name == "fighvp")
        return {"p", 0.01, 0.99, [](double p) { return adc_on_pure(p, 0.75); }, [](double) { return pure(0.75); }};
    if (name == "fighvwLE") return {"p", 0.01, 0.99, adc_x, [](double) { return werner(0.4); }};
    if (name == "fighvwHE") return {"p", 0.01, 0.99, adc_x, [](double) { return werner(2.0 / 3); }};
    if (name == "fighvwLEmag")
        return {"p", kGolden + 1e-3, 0.999, adc_x, [](double) { return werner(0.4); }, true};
    if (name == "fighvwHEmag")
        return {"p", kGolden + 1e-3, 0.999, adc_x, [](double) { return werner(2.0 / 3); }, true};
    throw UsageError("unknown figure '" + name + "'");
}

Table dist_figure() {
    Table t{{"N", "Rc_I", "Rc_II"}, {}};
    for (int n = 1; n <= 64; ++n) t.rows.push_back({double(n), rc_strategy1(n, 0.8), rc_strategy2(n, 0.8)});
    return t;
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {"figpvp",   "figbdvbd",    "fighvp",      "fighvwLE",
                                                   "fighvwHE", "fighvwLEmag", "fighvwHEmag", "dist"};
    return names;
}

Table figure(const std::string& name, const FigureOptions& opts) {
    if (name == "dist") return dist_figure();
    const Setup su = setup_for(name);
    if (opts.points < 2) throw UsageError("--points must be at least 2");

    Table t;
    t.columns = {su.xname};
    if (!su.protocol3) t.columns.push_back("F1_star");
    if (name == "figpvp") t.columns.push_back("F2_star");
    if (opts.sdp) t.columns.push_back("F_P");
    t.columns.push_back("F_P1");
    t.columns.push_back("F_P2");
    if (su.protocol3) t.columns.push_back("F_P3");

    const std::vector<double> xs = linspace(su.from, su.to, opts.points);
    t.rows = parallel_rows(opts.points, [&](int i) {
        const double x = xs[i];
        const DensityMatrix r = su.rho(x), s = su.sigma(x);
        std::vector<double> row{x};
        if (!su.protocol3) row.push_back(f1_star(r, s));
        if (name == "figpvp") row.push_back(f2_star(r, s));
        if (opts.sdp) row.push_back(restricted_sep_fp(r, s, opts.tol));
        row.push_back(p1(r, s));
        row.push_back(p2(r, s));
        if (su.protocol3) row.push_back(protocol3(r, s, x).average_fef);
        return row;
    });

    // Bell-diagonal pairs: Bell measurement is conjectured optimal, flag anything above it
    if (name == "figbdvbd" && opts.sdp) {
        const size_t fp = 2, fp1 = 3;
        for (const auto& row : t.rows)
            if (row[fp1] + 1e-6 < row[fp])
                std::cerr << "counterexample candidate: p=" << format_number(row[0]) << " F_P=" << format_number(row[fp])
                          << " F_P1=" << format_number(row[fp1]) << "\n";
    }
    return t;
}

}  // namespace telefid::cli
