#include "blowup_lab/io.hpp"

#include "blowup/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace blowup::lab {

using nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump(std::ostream& os, const ordered_json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case ordered_json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) os << ",\n";
            first = false;
            os << inner << ordered_json(key).dump() << ": ";
            dump(os, value, indent + 1);
        }
        os << '\n' << pad << '}';
        return;
    }
    case ordered_json::value_t::array: {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ", ";
            dump(os, j[i], indent + 1);
        }
        os << ']';
        return;
    }
    case ordered_json::value_t::number_float: {
        const double v = j.get<double>();
        os << (std::isfinite(v) ? format_double(v) : "null");
        return;
    }
    default:
        os << j.dump();
    }
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, const char* header) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw Error(ErrorCode::ConfigError, path.string() + ": expected header " + header);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.c_str();
        while (true) {
            char* end = nullptr;
            row.push_back(std::strtod(p, &end));
            if (end == p) throw Error(ErrorCode::ConfigError, path.string() + ": bad number in " + line);
            if (*end == '\0') break;
            if (*end != ',') throw Error(ErrorCode::ConfigError, path.string() + ": bad row " + line);
            p = end + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string dump_json(const ordered_json& j) {
    std::ostringstream os;
    dump(os, j, 0);
    os << '\n';
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
    out << text;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << kTraceHeader << '\n';
    for (const TraceSample& s : trace.samples)
        out << format_double(s.t) << ',' << format_double(s.M) << ',' << format_double(s.ut_R) << ','
            << format_double(s.min_ur) << ',' << format_double(s.min_J2) << ','
            << format_double(s.min_J3) << ',' << format_double(s.dt) << '\n';
}

void write_lemma1_csv(std::ostream& out, const Trace& trace) {
    out << kLemma1Header << '\n';
    for (const TraceSample& s : trace.samples)
        out << format_double(s.t) << ',' << format_double(s.min_u) << ',' << format_double(s.min_ut)
            << '\n';
}

void write_snapshots_csv(std::ostream& out, const Trace& trace) {
    out << kSnapshotsHeader << '\n';
    for (std::size_t k = 0; k < trace.snapshots.size(); ++k) {
        const Snapshot& snap = trace.snapshots[k];
        const std::string t = format_double(snap.t);
        const RadialGrid& g = snap.u.grid();
        for (std::size_t i = 0; i < snap.u.size(); ++i)
            out << k << ',' << t << ',' << format_double(g.r(i)) << ',' << format_double(snap.u[i])
                << '\n';
    }
}

void write_trace_files(const std::filesystem::path& dir, const Trace& trace) {
    std::filesystem::create_directories(dir);
    auto emit = [&](const char* name, auto&& writer) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + (dir / name).string());
        writer(out, trace);
    };
    emit("trace.csv", write_trace_csv);
    emit("lemma1.csv", write_lemma1_csv);
    emit("snapshots.csv", write_snapshots_csv);
}

Trace read_trace_files(const std::filesystem::path& dir, const RadialGrid& grid, double u_stop,
                       double t_max, double epsilon) {
    const auto trace_rows = read_csv(dir / "trace.csv", kTraceHeader);
    const auto lemma_rows = read_csv(dir / "lemma1.csv", kLemma1Header);
    if (trace_rows.empty() || lemma_rows.size() != trace_rows.size())
        throw Error(ErrorCode::ConfigError, "trace.csv and lemma1.csv disagree in length");

    Trace tr;
    tr.epsilon = epsilon;
    for (std::size_t k = 0; k < trace_rows.size(); ++k) {
        const auto& a = trace_rows[k];
        const auto& b = lemma_rows[k];
        if (a.size() != 7 || b.size() != 3 || a[0] != b[0])
            throw Error(ErrorCode::ConfigError, "malformed trace row " + std::to_string(k));
        tr.samples.push_back({a[0], a[1], a[2], a[3], a[4], a[5], a[6], b[1], b[2]});
        if (k && a[1] < trace_rows[k - 1][1]) tr.monotone = false;
    }

    const auto snap_rows = read_csv(dir / "snapshots.csv", kSnapshotsHeader);
    const std::size_t width = grid.size();
    if (snap_rows.size() % width != 0)
        throw Error(ErrorCode::ConfigError, "snapshots.csv does not match the grid size");
    for (std::size_t base = 0; base < snap_rows.size(); base += width) {
        std::vector<double> u(width);
        for (std::size_t i = 0; i < width; ++i) {
            const auto& row = snap_rows[base + i];
            if (row.size() != 4 || row[1] != snap_rows[base][1])
                throw Error(ErrorCode::ConfigError, "malformed snapshot block");
            u[i] = row[3];
        }
        tr.snapshots.push_back({snap_rows[base][1], RadialField(grid, std::move(u))});
    }

    const TraceSample& last = tr.last();
    if (last.M >= u_stop)
        tr.stop = StopReason::ReachedUStop;
    else if (last.t >= t_max * (1.0 - 1e-12))
        tr.stop = StopReason::ReachedTmax;
    else
        tr.stop = StopReason::DtUnderflow;
    return tr;
}

} // namespace blowup::lab
