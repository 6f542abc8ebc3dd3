#include "wbounds/sweep.hpp"

#include "wbounds/errors.hpp"
#include "wbounds/trunc.hpp"
#include "wbounds/winsor.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace wbounds {

const char* to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::UniversalWinsor: return "universal-winsor";
        case SweepKind::FixedCWinsor: return "fixed-c-winsor";
        case SweepKind::Trunc: return "trunc";
        case SweepKind::RatioUniversalOverFixed: return "ratio-universal-over-fixed";
        case SweepKind::RatioTruncOverWinsor: return "ratio-trunc-over-winsor";
    }
    return "?";
}

const char* to_string(SweepScale scale) { return scale == SweepScale::Log ? "log" : "linear"; }

SweepKind parse_sweep_kind(const std::string& text) {
    for (const SweepKind k : {SweepKind::UniversalWinsor, SweepKind::FixedCWinsor, SweepKind::Trunc,
                              SweepKind::RatioUniversalOverFixed, SweepKind::RatioTruncOverWinsor}) {
        if (text == to_string(k)) {
            return k;
        }
    }
    throw ValidationError("unknown sweep kind '" + text + "'");
}

SweepScale parse_sweep_scale(const std::string& text) {
    if (text == "log") return SweepScale::Log;
    if (text == "linear") return SweepScale::Linear;
    throw ValidationError("unknown scale '" + text + "' (expected log or linear)");
}

bool needs_c_values(SweepKind kind) { return kind != SweepKind::UniversalWinsor; }

void SweepSpec::validate() const {
    detail::require(std::isfinite(sigma_min) && sigma_min > 0.0, "sweep: sigma-min must be positive");
    detail::require(std::isfinite(sigma_max) && sigma_max > sigma_min, "sweep: requires sigma-min < sigma-max");
    detail::require(points >= 2, "sweep: points must be >= 2");
    detail::require(std::isfinite(cut) && cut > 0.0, "sweep: cut must be positive");
    if (needs_c_values(kind)) {
        detail::require(!c_values.empty(), std::string("sweep: --c is required for kind ") + to_string(kind));
    }
    for (const double c : c_values) {
        detail::require(std::isfinite(c) && c > 0.0, "sweep: every c must be positive");
    }
}

std::vector<std::string> SweepTable::header() const {
    std::vector<std::string> h{"sigma"};
    if (kind == SweepKind::UniversalWinsor) {
        h.emplace_back("L_W");
    } else {
        for (const double c : c_values) {
            h.push_back(fmt::format("c={}", c));
        }
    }
    return h;
}

std::vector<double> sigma_grid(double sigma_min, double sigma_max, std::size_t points, SweepScale scale) {
    detail::require(std::isfinite(sigma_min) && sigma_min > 0.0, "sigma_grid: sigma_min must be positive");
    detail::require(std::isfinite(sigma_max) && sigma_max > sigma_min, "sigma_grid: requires sigma_min < sigma_max");
    detail::require(points >= 2, "sigma_grid: points must be >= 2");

    std::vector<double> out(points);
    const double n = static_cast<double>(points - 1);
    if (scale == SweepScale::Log) {
        const double l0 = std::log(sigma_min);
        const double step = (std::log(sigma_max) - l0) / n;
        for (std::size_t i = 0; i < points; ++i) out[i] = std::exp(l0 + step * static_cast<double>(i));
    } else {
        const double step = (sigma_max - sigma_min) / n;
        for (std::size_t i = 0; i < points; ++i) out[i] = sigma_min + step * static_cast<double>(i);
    }
    out.front() = sigma_min;
    out.back() = sigma_max;
    for (std::size_t i = 1; i < points; ++i) {
        detail::require(out[i] > out[i - 1], "sigma_grid: too many points for the range (grid not strictly increasing)");
    }
    return out;
}

std::vector<double> sweep_row(SweepKind kind, const std::vector<double>& c_values, double sigma, double cut,
                              const RootTolerances& tol) {
    if (kind == SweepKind::UniversalWinsor) {
        return {lower_bound_universal(sigma, cut, tol).bound};
    }
    const double universal =
        kind == SweepKind::RatioUniversalOverFixed ? lower_bound_universal(sigma, cut, tol).bound : 0.0;
    std::vector<double> row;
    row.reserve(c_values.size());
    for (const double c : c_values) {
        const BoundQuery q{c, sigma, cut};
        switch (kind) {
            case SweepKind::FixedCWinsor: row.push_back(lower_bound_fixed_c(q, tol).bound); break;
            case SweepKind::Trunc: row.push_back(lower_bound_trunc(q, tol).bound); break;
            case SweepKind::RatioUniversalOverFixed:
                row.push_back(universal / lower_bound_fixed_c(q, tol).bound);
                break;
            case SweepKind::RatioTruncOverWinsor:
                row.push_back(lower_bound_trunc(q, tol).bound / lower_bound_fixed_c(q, tol).bound);
                break;
            case SweepKind::UniversalWinsor: break;
        }
    }
    return row;
}

SweepTable run_sweep(const SweepSpec& spec, const RootTolerances& tol) {
    spec.validate();
    SweepTable table;
    table.kind = spec.kind;
    table.cut = spec.cut;
    if (needs_c_values(spec.kind)) table.c_values = spec.c_values;
    table.sigma_values = sigma_grid(spec.sigma_min, spec.sigma_max, spec.points, spec.scale);
    table.rows.reserve(table.sigma_values.size());
    for (const double sigma : table.sigma_values) {
        std::vector<double> row = sweep_row(spec.kind, table.c_values, sigma, spec.cut, tol);
        for (const double v : row) {
            if (!std::isfinite(v) || !(v > 0.0)) {
                throw NonFinite(fmt::format("sweep: value {} at sigma = {} is not finite and positive", v, sigma));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    const std::vector<std::string> h = table.header();
    for (std::size_t j = 0; j < h.size(); ++j) {
        out += (j ? "," : "") + h[j];
    }
    out += '\n';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out += fmt::format("{:.17g}", table.sigma_values[i]);
        for (const double v : table.rows[i]) out += fmt::format(",{:.17g}", v);
        out += '\n';
    }
    return out;
}

void write_csv(const SweepTable& table, const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    const std::string text = to_csv(table);
    fs::path tmp = path;
    tmp += fmt::format(".tmp.{}", static_cast<long>(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
        os << text;
        os.flush();
        if (!os) {
            os.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ValidationError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw ValidationError("cannot rename into '" + path.string() + "': " + ec.message());
    }
}

namespace {

double parse_double(std::string_view field, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ValidationError(fmt::format("csv line {}: bad number '{}'", line, field));
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

CsvData parse_csv(const std::string& text) {
    CsvData data;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string_view line(text.data() + pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty()) throw ValidationError(fmt::format("csv line {}: empty line", line_no));
        const auto fields = split(line);
        if (line_no == 1) {
            for (const auto f : fields) data.header.emplace_back(f);
            continue;
        }
        if (fields.size() != data.header.size()) {
            throw ValidationError(fmt::format("csv line {}: expected {} fields, got {}", line_no,
                                              data.header.size(), fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto f : fields) row.push_back(parse_double(f, line_no));
        data.rows.push_back(std::move(row));
    }
    if (data.header.empty() || data.header.front() != "sigma") {
        throw ValidationError("csv: missing 'sigma' header");
    }
    return data;
}

CsvData read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace wbounds
