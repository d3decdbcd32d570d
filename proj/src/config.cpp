#include "deltavar/config.hpp"

#include "deltavar/errors.hpp"
#include "deltavar/random.hpp"
#include "deltavar/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace deltavar {

namespace {

[[noreturn]] void config_fail(const std::string& origin, const std::string& what) {
    fail(errc::config_error, origin + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct KvFile {
    std::string origin;
    // key is "section.name"; empty section for top-level keys
    std::map<std::string, std::string> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    std::string get_string(const std::string& key) const {
        auto it = entries.find(key);
        if (it == entries.end()) config_fail(origin, "missing required field '" + key + "'");
        return it->second;
    }

    double get_number(const std::string& key) const {
        const std::string raw = get_string(key);
        double v = 0.0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
            config_fail(origin, "field '" + key + "' is not a number: '" + raw + "'");
        return v;
    }

    std::uint64_t get_seed(const std::string& key) const {
        const std::string raw = get_string(key);
        std::uint64_t v = 0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
            config_fail(origin, "field '" + key + "' is not a 64-bit seed: '" + raw + "'");
        return v;
    }

    std::vector<double> get_list(const std::string& key) const {
        const std::string raw = get_string(key);
        std::vector<double> out;
        std::size_t start = 0;
        while (start <= raw.size()) {
            std::size_t comma = raw.find(',', start);
            if (comma == std::string::npos) comma = raw.size();
            const auto item = trim(std::string_view(raw).substr(start, comma - start));
            if (item.empty())
                config_fail(origin, "field '" + key + "' has an empty list entry");
            double v = 0.0;
            auto res = std::from_chars(item.data(), item.data() + item.size(), v);
            if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
                config_fail(origin, "field '" + key + "' has a non-numeric entry: '" +
                                        std::string(item) + "'");
            out.push_back(v);
            start = comma + 1;
        }
        return out;
    }
};

KvFile parse_kv(std::string_view text, const std::string& origin) {
    KvFile kv{origin, {}};
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                config_fail(origin, "line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            config_fail(origin, "line " + std::to_string(line_no) + ": expected key = value");
        std::string key = std::string(trim(line.substr(0, eq)));
        std::string value = std::string(trim(line.substr(eq + 1)));
        if (key.empty())
            config_fail(origin, "line " + std::to_string(line_no) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (kv.entries.count(full))
            config_fail(origin, "duplicate field '" + full + "'");
        kv.entries[full] = value;
    }
    return kv;
}

} // namespace

ProblemConfig ProblemConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::config_error, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

ProblemConfig ProblemConfig::parse(std::string_view text, const std::string& origin) {
    const KvFile kv = parse_kv(text, origin);
    ProblemConfig cfg;

    const double order_raw = kv.get_number("order");
    if (order_raw < 1 || order_raw != std::floor(order_raw))
        config_fail(origin, "field 'order' must be a positive integer");
    cfg.order = static_cast<int>(order_raw);
    if (kv.has("seed")) cfg.seed = kv.get_seed("seed");

    const std::string kind = kv.get_string("timescale.kind");
    if (kind == "explicit") {
        cfg.kind = ScaleKind::explicit_points;
        cfg.points = kv.get_list("timescale.points");
    } else if (kind == "integer_range") {
        cfg.kind = ScaleKind::integer_range;
        cfg.a = kv.get_number("timescale.a");
        cfg.b = kv.get_number("timescale.b");
    } else if (kind == "h_grid") {
        cfg.kind = ScaleKind::h_grid;
        cfg.a = kv.get_number("timescale.a");
        cfg.b = kv.get_number("timescale.b");
        cfg.h = kv.get_number("timescale.h");
    } else if (kind == "random") {
        cfg.kind = ScaleKind::random;
        const double n = kv.get_number("timescale.n");
        if (n < 2 || n != std::floor(n))
            config_fail(origin, "field 'timescale.n' must be an integer >= 2");
        cfg.n = static_cast<int>(n);
        cfg.scale_seed = kv.has("timescale.seed") ? kv.get_seed("timescale.seed") : 0;
        cfg.span = kv.get_number("timescale.span");
        if (!(cfg.span > 0)) config_fail(origin, "field 'timescale.span' must be positive");
    } else {
        config_fail(origin, "field 'timescale.kind' must be one of explicit, integer_range, "
                            "h_grid, random; got '" + kind + "'");
    }

    const bool has_expr = kv.has("lagrangian.expr");
    const bool has_builtin = kv.has("lagrangian.builtin");
    if (has_expr == has_builtin)
        config_fail(origin, "exactly one of 'lagrangian.expr' and 'lagrangian.builtin' is required");
    if (has_expr) cfg.expr = kv.get_string("lagrangian.expr");
    else {
        cfg.builtin = kv.get_string("lagrangian.builtin");
        if (!builtin_lagrangian(cfg.builtin))
            config_fail(origin, "field 'lagrangian.builtin' names no builtin: '" + cfg.builtin + "'");
    }

    cfg.left = kv.get_list("boundary.left");
    cfg.right = kv.get_list("boundary.right");
    if (cfg.left.size() != static_cast<std::size_t>(cfg.order))
        config_fail(origin, "field 'boundary.left' must list " + std::to_string(cfg.order) +
                                " values (the problem order), got " + std::to_string(cfg.left.size()));
    if (cfg.right.size() != static_cast<std::size_t>(cfg.order))
        config_fail(origin, "field 'boundary.right' must list " + std::to_string(cfg.order) +
                                " values (the problem order), got " + std::to_string(cfg.right.size()));

    if (kv.has("tolerances.residual")) cfg.tol.residual = kv.get_number("tolerances.residual");
    if (kv.has("tolerances.gradient")) cfg.tol.gradient = kv.get_number("tolerances.gradient");
    if (kv.has("tolerances.admissible")) cfg.tol.admissible = kv.get_number("tolerances.admissible");
    if (!(cfg.tol.residual > 0) || !(cfg.tol.gradient > 0) || !(cfg.tol.admissible > 0))
        config_fail(origin, "tolerances must be positive");
    if (kv.has("max_iterations")) {
        const double m = kv.get_number("max_iterations");
        if (m < 1 || m != std::floor(m))
            config_fail(origin, "field 'max_iterations' must be a positive integer");
        cfg.max_iterations = static_cast<int>(m);
    }

    // catch typos: every provided key must be one we consumed
    static const char* known[] = {
        "order", "seed", "max_iterations", "timescale.kind", "timescale.points", "timescale.a",
        "timescale.b", "timescale.h", "timescale.n", "timescale.seed", "timescale.span",
        "lagrangian.expr", "lagrangian.builtin", "boundary.left", "boundary.right",
        "tolerances.residual", "tolerances.gradient", "tolerances.admissible"};
    for (const auto& [key, value] : kv.entries) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) config_fail(origin, "unknown field '" + key + "'");
    }

    cfg.build_problem(); // validate eagerly so load reports all errors
    return cfg;
}

TimeScale ProblemConfig::build_scale() const {
    switch (kind) {
    case ScaleKind::explicit_points: return TimeScale::from_points(points);
    case ScaleKind::integer_range: return TimeScale::integer_window(a, b);
    case ScaleKind::h_grid: return TimeScale::h_window(a, b, h);
    case ScaleKind::random: {
        // n points from 0, gaps uniform in [0.25, 1), rescaled to the span
        Rng rng(scale_seed);
        std::vector<double> pts(static_cast<std::size_t>(n));
        double acc = 0.0;
        pts[0] = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            acc += rng.uniform(0.25, 1.0);
            pts[i] = acc;
        }
        for (auto& v : pts) v *= span / acc;
        return TimeScale::from_points(std::move(pts));
    }
    }
    fail(errc::config_error, "unreachable scale kind");
}

Lagrangian ProblemConfig::build_lagrangian() const {
    if (!builtin.empty()) return make_lagrangian(*builtin_lagrangian(builtin), order);
    return make_lagrangian(expr, order);
}

VariationalProblem ProblemConfig::build_problem() const {
    return VariationalProblem(build_scale(), build_lagrangian(), left, right);
}

std::string ProblemConfig::echo() const {
    std::ostringstream os;
    os << "order = " << order << "\n";
    os << "seed = " << seed << "\n";
    os << "[timescale]\n";
    switch (kind) {
    case ScaleKind::explicit_points: {
        os << "kind = explicit\npoints = ";
        for (std::size_t i = 0; i < points.size(); ++i)
            os << (i ? ", " : "") << fmt17(points[i]);
        os << "\n";
        break;
    }
    case ScaleKind::integer_range:
        os << "kind = integer_range\na = " << fmt17(a) << "\nb = " << fmt17(b) << "\n";
        break;
    case ScaleKind::h_grid:
        os << "kind = h_grid\na = " << fmt17(a) << "\nb = " << fmt17(b) << "\nh = " << fmt17(h)
           << "\n";
        break;
    case ScaleKind::random:
        os << "kind = random\nn = " << n << "\nseed = " << scale_seed
           << "\nspan = " << fmt17(span) << "\n";
        break;
    }
    os << "[lagrangian]\n";
    if (!builtin.empty()) os << "builtin = " << builtin << "\n";
    else os << "expr = " << expr << "\n";
    os << "[boundary]\n";
    os << "left = ";
    for (std::size_t i = 0; i < left.size(); ++i) os << (i ? ", " : "") << fmt17(left[i]);
    os << "\nright = ";
    for (std::size_t i = 0; i < right.size(); ++i) os << (i ? ", " : "") << fmt17(right[i]);
    os << "\n";
    return os.str();
}

} // namespace deltavar
