#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "telefid/cli.hpp"

namespace telefid::cli {

std::string format_number(double v) {
    if (v == 0) v = 0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + t.columns[j];
    out += '\n';
    for (const auto& r : t.rows) {
        for (size_t j = 0; j < r.size(); ++j) out += (j ? "," : "") + format_number(r[j]);
        out += '\n';
    }
    return out;
}

namespace {

std::string fixed3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::string to_svg(const Table& t, const std::string& title) {
    const double W = 640, H = 400, L = 60, R = 150, T = 30, B = 40;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& r : t.rows) {
        if (r.empty() || !std::isfinite(r[0])) continue;
        x0 = first ? r[0] : std::min(x0, r[0]);
        x1 = first ? r[0] : std::max(x1, r[0]);
        first = false;
    }
    first = true;
    for (const auto& r : t.rows)
        for (size_t j = 1; j < r.size(); ++j) {
            if (!std::isfinite(r[j])) continue;
            y0 = first ? r[j] : std::min(y0, r[j]);
            y1 = first ? r[j] : std::max(y1, r[j]);
            first = false;
        }
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1e-3;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << L << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    s << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double y : {y0 + pad, y1 - pad})
        s << "<text x=\"" << L - 5 << "\" y=\"" << fixed3(sy(y)) << "\" text-anchor=\"end\" font-size=\"10\">"
          << format_number(y) << "</text>\n";
    for (double x : {x0, x1})
        s << "<text x=\"" << fixed3(sx(x)) << "\" y=\"" << H - B + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
          << format_number(x) << "</text>\n";
    if (!t.columns.empty())
        s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 8 << "\" text-anchor=\"middle\" font-size=\"12\">"
          << t.columns[0] << "</text>\n";
    for (size_t j = 1; j < t.columns.size(); ++j) {
        const char* c = kColors[(j - 1) % (sizeof kColors / sizeof kColors[0])];
        s << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
        bool sep = false;
        for (const auto& r : t.rows) {
            if (!std::isfinite(r[j])) continue;
            s << (sep ? " " : "") << fixed3(sx(r[0])) << "," << fixed3(sy(r[j]));
            sep = true;
        }
        s << "\"><title>" << t.columns[j] << "</title></polyline>\n";
        const double ly = T + 15 * static_cast<double>(j);
        s << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
          << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << t.columns[j] << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit(const Table& t, const std::string& format, const std::string& path, const std::string& title) {
    std::string body;
    if (format == "csv")
        body = to_csv(t);
    else if (format == "svg")
        body = to_svg(t, title);
    else
        throw UsageError("unknown format '" + format + "' (csv, svg)");
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << body;
}

std::vector<std::vector<double>> parallel_rows(int n, const std::function<std::vector<double>(int)>& row) {
    std::vector<std::vector<double>> out(n);
    std::vector<std::exception_ptr> err(n);
    const int workers = std::max(1, std::min<int>(n, static_cast<int>(std::thread::hardware_concurrency())));
    auto work = [&](int w) {
        for (int i = w; i < n; i += workers) {
            try {
                out[i] = row(i);
            } catch (...) {
                err[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace telefid::cli
