#include "deltavar/report.hpp"

#include "deltavar/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace deltavar {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void RunReport::print(std::ostream& os) const {
    os << "deltavar report\n";
    os << "command = " << command << "\n";
    os << "[config]\n" << config_echo;
    os << "[result]\n";
    if (functional) os << "functional_value = " << fmt17(*functional) << "\n";
    for (std::size_t i = 0; i < constants.size(); ++i)
        os << "c_" << (i + 1) << " = " << fmt17(constants[i]) << "\n";
    if (residual_sup) os << "residual_sup = " << fmt17(*residual_sup) << "\n";
    if (residual_l2) os << "residual_l2 = " << fmt17(*residual_l2) << "\n";
    if (gradient_sup) os << "gradient_sup = " << fmt17(*gradient_sup) << "\n";
    if (scale) os << "scale = " << fmt17(*scale) << "\n";
    if (converged) os << "converged = " << (*converged ? "true" : "false") << "\n";
    if (iterations) os << "iterations = " << *iterations << "\n";
    if (admissible) os << "admissible = " << (*admissible ? "true" : "false") << "\n";
    if (stationary) os << "stationary = " << (*stationary ? "true" : "false") << "\n";
    if (agree) os << "agree = " << (*agree ? "true" : "false") << "\n";
    if (!trajectory_columns.empty()) {
        os << "[trajectory]\n";
        os << "t,y";
        for (std::size_t d = 2; d < trajectory_columns.size(); ++d) os << ",d" << (d - 1);
        os << "\n";
        const std::size_t rows = trajectory_columns[0].size();
        for (std::size_t k = 0; k < rows; ++k) {
            for (std::size_t c = 0; c < trajectory_columns.size(); ++c) {
                if (c) os << ",";
                if (k < trajectory_columns[c].size()) os << fmt17(trajectory_columns[c][k]);
            }
            os << "\n";
        }
    }
}

std::vector<std::vector<double>> trajectory_table(const VariationalProblem& p,
                                                  const Trajectory& y) {
    std::vector<std::vector<double>> cols;
    const auto pts = p.scale().points();
    cols.emplace_back(pts.begin(), pts.end());
    for (const auto& level : derivative_stack(p, y))
        cols.emplace_back(level.values().begin(), level.values().end());
    return cols;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& y) {
    os << "t,y\n";
    const auto& dom = y.y.domain();
    for (std::size_t k = 0; k < y.y.size(); ++k)
        os << fmt17(dom[k]) << "," << fmt17(y.y[k]) << "\n";
}

std::vector<std::pair<double, double>> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::csv_error, "cannot open trajectory CSV '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) fail(errc::csv_error, path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,y") fail(errc::csv_error, path + ": header must be exactly 't,y'");
    std::vector<std::pair<double, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            fail(errc::csv_error, path + ": line " + std::to_string(line_no) + " has no comma");
        double t = 0.0, v = 0.0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, t);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
        if (r1.ec != std::errc{} || r1.ptr != line.data() + comma || r2.ec != std::errc{} ||
            r2.ptr != line.data() + line.size())
            fail(errc::csv_error, path + ": line " + std::to_string(line_no) + " is not two numbers");
        rows.emplace_back(t, v);
    }
    return rows;
}

} // namespace deltavar
