#include "cmx/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cmx {

namespace {

constexpr const char* kMagic = "CMX1";
constexpr const char* kFieldList = "D1 D2 D3 B1 B2 B3 e1 e2 e3 h1 h2 h3 E";

std::vector<const Array*> blocks(const MaxwellState& s) {
    std::vector<const Array*> out;
    for (const FormField* f : {&s.D, &s.B, &s.e, &s.h, &s.energy})
        for (int c = 0; c < f->components(); ++c) out.push_back(&(*f)[c]);
    return out;
}

std::vector<Array*> blocks(MaxwellState& s) {
    std::vector<Array*> out;
    for (FormField* f : {&s.D, &s.B, &s.e, &s.h, &s.energy})
        for (int c = 0; c < f->components(); ++c) out.push_back(&(*f)[c]);
    return out;
}

void put_le(std::string& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    char buf[8];
    std::memcpy(buf, &bits, 8);
    out.append(buf, 8);
}

double get_le(const char* p) {
    std::uint64_t bits;
    std::memcpy(&bits, p, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    return std::bit_cast<double>(bits);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write to " + path + " failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

const char* const kTimeseriesHeader =
    "t,psi_total,phi_total,div_D_max,div_B_max,constitutive_residual_max,energy_residual_max,"
    "hamiltonian_functional,poynting_balance_residual";

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || s.empty()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

std::string timeseries_csv(const std::vector<DiagnosticsReport>& rows) {
    std::string out = kTimeseriesHeader;
    out += '\n';
    for (const auto& r : rows) {
        const double vals[] = {r.time, r.psi_total, r.phi_total, r.div_D_max, r.div_B_max,
                               r.constitutive_residual_max, r.energy_residual_max, r.hamiltonian_functional,
                               r.poynting_balance_residual};
        for (size_t i = 0; i < std::size(vals); ++i) {
            if (i) out += ',';
            out += format_double(vals[i]);
        }
        out += '\n';
    }
    return out;
}

void write_timeseries(const std::vector<DiagnosticsReport>& rows, const std::string& path) {
    write_file(path, timeseries_csv(rows));
}

std::vector<DiagnosticsReport> read_timeseries(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != kTimeseriesHeader) throw IoError(path + ": missing or wrong CSV header");
    std::vector<DiagnosticsReport> rows;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 9) throw IoError(path + ":" + std::to_string(lineno) + ": expected 9 columns");
        double v[9];
        try {
            for (size_t i = 0; i < 9; ++i) v[i] = parse_double(cells[i]);
        } catch (const std::invalid_argument& e) {
            throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
    }
    return rows;
}

std::string snapshot_bytes(const MaxwellState& s) {
    s.validate();
    const Mesh& m = s.mesh();
    std::string out;
    out += kMagic;
    out += "\ndims " + std::to_string(m.dim(0)) + " " + std::to_string(m.dim(1)) + " " + std::to_string(m.dim(2));
    out += "\nspacing " + format_double(m.spacing());
    out += "\ntime " + format_double(s.time);
    out += "\nfields ";
    out += kFieldList;
    out += '\n';
    out.reserve(out.size() + 13 * m.size() * 8);
    for (const Array* a : blocks(s))
        for (double v : *a) put_le(out, v);
    return out;
}

MaxwellState snapshot_from_bytes(const std::string& bytes) {
    size_t pos = 0;
    const auto next_line = [&]() {
        const size_t end = bytes.find('\n', pos);
        if (end == std::string::npos) throw IoError("snapshot: truncated header");
        std::string line = bytes.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    const std::string magic = next_line();
    if (magic.rfind("CMX", 0) != 0) throw IoError("snapshot: not a snapshot file");
    if (magic != kMagic) throw IoError("snapshot: unsupported format version '" + magic + "' (expected CMX1)");

    std::array<int, 3> dims{};
    double spacing = 0.0, time = 0.0;
    {
        std::istringstream ds(next_line());
        std::string key;
        if (!(ds >> key >> dims[0] >> dims[1] >> dims[2]) || key != "dims") throw IoError("snapshot: bad dims line");
        std::istringstream ss(next_line());
        std::string sval;
        if (!(ss >> key >> sval) || key != "spacing") throw IoError("snapshot: bad spacing line");
        spacing = parse_double(sval);
        std::istringstream ts(next_line());
        if (!(ts >> key >> sval) || key != "time") throw IoError("snapshot: bad time line");
        time = parse_double(sval);
        if (next_line() != std::string("fields ") + kFieldList) throw IoError("snapshot: unexpected field list");
    }

    MaxwellState s = MaxwellState::zero(Mesh(dims, spacing));
    s.time = time;
    const size_t n = s.mesh().size();
    if (bytes.size() - pos != 13 * n * 8) throw IoError("snapshot: payload size does not match the header");
    const char* p = bytes.data() + pos;
    for (Array* a : blocks(s)) {
        for (size_t i = 0; i < n; ++i, p += 8) (*a)[i] = get_le(p);
    }
    return s;
}

void write_snapshot(const MaxwellState& s, const std::string& path) { write_file(path, snapshot_bytes(s)); }

MaxwellState read_snapshot(const std::string& path) {
    try {
        return snapshot_from_bytes(read_file(path));
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

}  // namespace cmx
