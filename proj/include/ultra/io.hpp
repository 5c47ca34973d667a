// Serialization: field dumps as CSV (%.17g, row-major) and reports as JSON
// with sorted keys, both byte-stable across runs.
#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ultra/extend.hpp"
#include "ultra/microlocal.hpp"
#include "ultra/seq.hpp"

namespace ultra {

inline std::string g17(double v) {
    char buf[40];
    sprint_g17(buf, sizeof buf, v);
    return buf;
}

// Field dump: one row per node, row-major.
inline void dump_field_csv(const ComplexGridField& f, std::ostream& os) {
    os << "re,im,F_re,F_im,dbar_re,dbar_im,d,delta,p\n";
    const GridSpec& g = f.grid;
    const bool has_dbar = !f.dbar.empty();
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const size_t id = g.idx(ix, iy);
            os << g17(g.x(ix)) << ',' << g17(g.y(iy)) << ',' << g17(f.F[id].real()) << ','
               << g17(f.F[id].imag()) << ',' << g17(has_dbar ? f.dbar[id].real() : 0.0) << ','
               << g17(has_dbar ? f.dbar[id].imag() : 0.0) << ',' << g17(f.dist[id]) << ','
               << g17(f.delta[id]) << ',' << f.pdeg[id] << '\n';
        }
}

inline void dump_field_csv(const ComplexGridField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot open '" + path + "' for writing");
    dump_field_csv(f, os);
}

inline nlohmann::json to_json(const SequenceReport& r) {
    nlohmann::json j;
    j["property"] = r.property;
    j["verdict"] = to_string(r.verdict);
    if (r.witness_index) j["witness"] = *r.witness_index;
    if (r.fitted) j["fitted"] = *r.fitted;
    if (!r.note.empty()) j["note"] = r.note;
    nlohmann::json trend = nlohmann::json::array();
    for (const auto& [k, v] : r.trend) trend.push_back({{"param", k}, {"value", v}});
    j["trend"] = trend;
    return j;
}

// Probe report: {distribution, x0, dir, weight, mode, verdict, fitted,
// grid:[{param, sup}]} per the wire format.
inline nlohmann::json to_json(const WFVerdict& v) {
    nlohmann::json j;
    j["distribution"] = v.distribution;
    j["x0"] = v.x0;
    j["dir"] = v.dir;
    j["weight"] = v.weight;
    j["mode"] = v.mode;
    j["verdict"] = to_string(v.verdict);
    j["fitted"] = v.fitted;
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& [p, s] : v.grid) grid.push_back({{"param", p}, {"sup", s}});
    j["grid"] = grid;
    return j;
}

inline nlohmann::json to_json(const AgreementReport& rep) {
    nlohmann::json j;
    j["agreement_on_conclusive"] = rep.agreement_on_conclusive;
    j["conclusive_fraction"] = rep.conclusive_fraction;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rep.rows) {
        nlohmann::json r;
        r["distribution"] = row.distribution;
        r["x0"] = row.x0;
        r["dir"] = row.dir;
        r["fbi"] = to_string(row.fbi.verdict);
        r["fourier"] = to_string(row.fourier.verdict);
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

inline void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
}

} // namespace ultra
