// io.hpp -- wire formats: JSON records for functions, sets and signals
// (schema "hypconc/1"), base64 bitsets for masks, CSV emission helpers.

#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "bergman.hpp"
#include "transforms.hpp"

namespace hypconc {

using json = nlohmann::json;

inline constexpr const char* kSchema = "hypconc/1";

// --- base64 ----------------------------------------------------------------

namespace detail {
inline const char* b64_alphabet() {
    return "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}
}  // namespace detail

inline std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    const char* tbl = detail::b64_alphabet();
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (size_t i = 0; i < bytes.size(); i += 3) {
        std::uint32_t v = std::uint32_t(bytes[i]) << 16;
        if (i + 1 < bytes.size()) v |= std::uint32_t(bytes[i + 1]) << 8;
        if (i + 2 < bytes.size()) v |= std::uint32_t(bytes[i + 2]);
        out.push_back(tbl[(v >> 18) & 63]);
        out.push_back(tbl[(v >> 12) & 63]);
        out.push_back(i + 1 < bytes.size() ? tbl[(v >> 6) & 63] : '=');
        out.push_back(i + 2 < bytes.size() ? tbl[v & 63] : '=');
    }
    return out;
}

inline std::vector<std::uint8_t> base64_decode(const std::string& text) {
    std::array<int, 256> rev;
    rev.fill(-1);
    const char* tbl = detail::b64_alphabet();
    for (int i = 0; i < 64; ++i) rev[std::uint8_t(tbl[i])] = i;
    std::vector<std::uint8_t> out;
    std::uint32_t acc = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        const int v = rev[std::uint8_t(c)];
        if (v < 0) throw std::invalid_argument("base64_decode: bad character");
        acc = (acc << 6) | std::uint32_t(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(std::uint8_t((acc >> bits) & 0xff));
        }
    }
    return out;
}

inline std::string pack_bitset(const std::vector<std::uint8_t>& cells) {
    std::vector<std::uint8_t> bytes((cells.size() + 7) / 8, 0);
    for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i]) bytes[i / 8] |= std::uint8_t(1u << (i % 8));
    return base64_encode(bytes);
}

inline std::vector<std::uint8_t> unpack_bitset(const std::string& b64,
                                               size_t n_cells) {
    const std::vector<std::uint8_t> bytes = base64_decode(b64);
    if (bytes.size() < (n_cells + 7) / 8)
        throw std::invalid_argument("unpack_bitset: mask shorter than grid");
    std::vector<std::uint8_t> cells(n_cells, 0);
    for (size_t i = 0; i < n_cells; ++i)
        cells[i] = (bytes[i / 8] >> (i % 8)) & 1u;
    return cells;
}

// --- functions ---------------------------------------------------------------

inline json to_json(const BergmanFunction& f) {
    json j;
    j["schema"] = kSchema;
    j["alpha"] = f.alpha().value();
    json coeffs = json::array();
    for (const auto& c : f.coeffs())
        coeffs.push_back({c.real(), c.imag()});
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline BergmanFunction bergman_from_json(const json& j) {
    AlphaParam alpha(j.at("alpha").get<double>());
    std::vector<complexd> coeffs;
    for (const auto& p : j.at("coeffs"))
        coeffs.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return BergmanFunction(alpha, std::move(coeffs));
}

// --- sets --------------------------------------------------------------------

inline json to_json(const HyperbolicSet& S) {
    json j;
    j["schema"] = kSchema;
    if (std::holds_alternative<AnalyticDisc>(S)) {
        const auto& d = std::get<AnalyticDisc>(S);
        j["type"] = "disc";
        j["center"] = {d.center.real(), d.center.imag()};
        j["s"] = d.s;
    } else {
        const auto& m = std::get<GridMask>(S);
        j["type"] = "mask";
        j["grid"] = {{"nr", m.grid->n_radial()},
                     {"ntheta", m.grid->angular_count()},
                     {"rmax", m.grid->r_max()}};
        j["mask"] = pack_bitset(m.cells);
    }
    return j;
}

inline HyperbolicSet set_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "disc") {
        const auto& c = j.at("center");
        return pseudo_disc(complexd(c.at(0).get<double>(),
                                    c.at(1).get<double>()),
                           j.at("s").get<double>());
    }
    if (type == "mask") {
        const auto& g = j.at("grid");
        auto grid = std::make_shared<QuadratureGrid>(
            g.at("nr").get<int>(), g.at("ntheta").get<int>(),
            g.at("rmax").get<double>());
        GridMask m;
        m.cells = unpack_bitset(j.at("mask").get<std::string>(),
                                size_t(grid->cell_count()));
        m.grid = std::move(grid);
        return m;
    }
    throw std::invalid_argument("set_from_json: unknown type '" + type + "'");
}

// --- signals -----------------------------------------------------------------

inline json to_json(const HalfPlaneSignal& sig) {
    json j;
    j["schema"] = kSchema;
    j["beta"] = sig.beta;
    json nodes = json::array();
    for (size_t i = 0; i < sig.t.size(); ++i)
        nodes.push_back({sig.t[i], sig.fhat[i].real(), sig.fhat[i].imag()});
    j["nodes"] = std::move(nodes);
    json w = json::array();
    for (double wi : sig.w) w.push_back(wi);
    j["weights"] = std::move(w);
    return j;
}

inline HalfPlaneSignal signal_from_json(const json& j) {
    HalfPlaneSignal sig;
    sig.beta = j.at("beta").get<double>();
    for (const auto& n : j.at("nodes")) {
        sig.t.push_back(n.at(0).get<double>());
        sig.fhat.emplace_back(n.at(1).get<double>(), n.at(2).get<double>());
    }
    if (j.contains("weights")) {
        for (const auto& w : j.at("weights")) sig.w.push_back(w.get<double>());
    } else {
        sig.w.assign(sig.t.size(), 0.0);
    }
    if (sig.w.size() != sig.t.size())
        throw std::invalid_argument("signal_from_json: weight/node mismatch");
    return sig;
}

// --- CSV ---------------------------------------------------------------------

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header)
        : header_(std::move(header)) {}

    void add_row(const std::vector<std::string>& cells) {
        if (cells.size() != header_.size())
            throw std::invalid_argument("CsvWriter: row width mismatch");
        rows_.push_back(cells);
    }

    std::string str() const {
        std::ostringstream os;
        emit(os);
        return os.str();
    }

    void write(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("CsvWriter: cannot open " + path);
        emit(os);
    }

    static std::string num(double v) {
        std::ostringstream os;
        os << std::scientific << std::setprecision(12) << v;
        return os.str();
    }

  private:
    void emit(std::ostream& os) const {
        for (size_t i = 0; i < header_.size(); ++i)
            os << header_[i] << (i + 1 < header_.size() ? "," : "\n");
        for (const auto& row : rows_) {
            for (size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
        }
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Row-major matrix CSV, entries as "re,im" pairs (two columns per entry).
inline std::string matrix_to_csv(const HermitianMatrix& T) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(12);
    for (int i = 0; i < T.dim(); ++i) {
        for (int j = 0; j < T.dim(); ++j) {
            os << T.at(i, j).real() << "," << T.at(i, j).imag();
            os << (j + 1 < T.dim() ? "," : "\n");
        }
    }
    return os.str();
}

inline json to_json(const struct DeficitReport& r);

}  // namespace hypconc

#include "concentration.hpp"

namespace hypconc {

inline json to_json(const DeficitReport& r) {
    json j;
    j["schema"] = kSchema;
    j["s"] = r.s;
    j["theta"] = r.theta;
    j["concentration"] = r.concentration;
    j["deficit"] = r.deficit;
    j["f_norm"] = r.f_norm;
    return j;
}

}  // namespace hypconc
