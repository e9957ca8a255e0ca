#include "polaraut/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polaraut {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint32_t parse_bit_line(const std::string& line, int m, const char* what) {
    if (static_cast<int>(line.size()) != m)
        throw std::runtime_error(std::string(what) + ": expected " + std::to_string(m) + " characters");
    std::uint32_t bits = 0;
    for (int c = 0; c < m; ++c) {
        const char ch = line[static_cast<std::size_t>(c)];
        if (ch == '1')
            bits |= 1u << c;
        else if (ch != '0')
            throw std::runtime_error(std::string(what) + ": characters must be 0 or 1");
    }
    return bits;
}

std::string format_bits(std::uint32_t bits, int m) {
    std::string out(static_cast<std::size_t>(m), '0');
    for (int c = 0; c < m; ++c)
        if ((bits >> c) & 1u)
            out[static_cast<std::size_t>(c)] = '1';
    return out;
}

bool next_token_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (!line.empty())
            return true;
    }
    return false;
}

}  // namespace

std::string format_matrix(const Gf2Matrix& mat) {
    std::string out = std::to_string(mat.dim()) + "\n";
    for (int r = 0; r < mat.dim(); ++r)
        out += format_bits(mat.row(r), mat.dim()) + "\n";
    return out;
}

Gf2Matrix parse_matrix(std::istream& in) {
    std::string line;
    if (!next_token_line(in, line))
        throw std::runtime_error("matrix: missing dimension line");
    int m = 0;
    try {
        m = std::stoi(line);
    } catch (const std::exception&) {
        throw std::runtime_error("matrix: bad dimension line '" + line + "'");
    }
    if (m < 0 || m > kMaxDim)
        throw std::runtime_error("matrix: dimension out of range");
    std::vector<std::uint32_t> rows;
    for (int r = 0; r < m; ++r) {
        if (!next_token_line(in, line))
            throw std::runtime_error("matrix: missing row " + std::to_string(r + 1));
        rows.push_back(parse_bit_line(line, m, "matrix row"));
    }
    return Gf2Matrix::from_rows(m, std::move(rows));
}

Gf2Matrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return parse_matrix(in);
}

std::string format_affine(const AffineMap& map) {
    return format_matrix(map.matrix) + format_bits(map.shift, map.dim()) + "\n";
}

AffineMap parse_affine(std::istream& in) {
    Gf2Matrix mat = parse_matrix(in);
    const int m = mat.dim();
    std::string line;
    std::uint32_t shift = 0;
    if (next_token_line(in, line))
        shift = parse_bit_line(line, m, "shift line");
    return AffineMap(std::move(mat), shift);
}

AffineMap parse_affine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return parse_affine(in);
}

CodeSpec parse_code_spec(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.contains("m"))
        throw std::runtime_error("code spec: missing field 'm'");
    CodeSpec spec;
    spec.m = j.at("m").get<int>();
    const int selectors = static_cast<int>(j.contains("i_min_z")) + static_cast<int>(j.contains("info_z")) +
                          static_cast<int>(j.contains("bec"));
    if (selectors != 1)
        throw std::runtime_error("code spec: exactly one of i_min_z, info_z, bec required");
    if (j.contains("i_min_z")) {
        auto zs = j.at("i_min_z").get<std::vector<std::uint64_t>>();
        std::vector<Monomial> gens;
        for (std::uint64_t z : zs)
            gens.push_back(Monomial{spec.m, z_to_a(z, spec.m)});
        spec.info = decreasing_closure(spec.m, gens);
        spec.i_min_z = zs;
    } else if (j.contains("info_z")) {
        spec.info = InfoSet::from_z_labels(spec.m, j.at("info_z").get<std::vector<std::uint64_t>>());
    } else {
        const auto& bec = j.at("bec");
        spec.info = bec_construct(spec.m, bec.at("k").get<std::uint64_t>(), bec.at("erasure").get<double>());
    }
    return spec;
}

CodeSpec load_code_spec(const std::string& path) {
    return parse_code_spec(read_file(path));
}

SimConfig parse_sim_config(const std::string& json_text, const std::string& base_dir) {
    json j = json::parse(json_text);
    SimConfig cfg;
    if (j.contains("code")) {
        cfg.code = PolarCode(parse_code_spec(j.at("code").dump()).info);
    } else if (j.contains("code_file")) {
        std::filesystem::path p = j.at("code_file").get<std::string>();
        if (p.is_relative() && !base_dir.empty())
            p = std::filesystem::path(base_dir) / p;
        cfg.code = PolarCode(load_code_spec(p.string()).info);
    } else {
        throw std::runtime_error("sim config: one of 'code' or 'code_file' required");
    }
    if (j.contains("t"))
        cfg.t = j.at("t").get<std::uint32_t>();
    if (j.contains("mode"))
        cfg.mode = ensemble_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("ebn0_db"))
        cfg.ebn0_db = j.at("ebn0_db").get<std::vector<double>>();
    if (j.contains("max_frames"))
        cfg.max_frames = j.at("max_frames").get<std::uint64_t>();
    if (j.contains("max_errors"))
        cfg.max_errors = j.at("max_errors").get<std::uint64_t>();
    if (j.contains("seed"))
        cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("decoder")) {
        const auto flavor = j.at("decoder").get<std::string>();
        if (flavor == "exact")
            cfg.flavor = DecoderFlavor::exact;
        else if (flavor == "minsum")
            cfg.flavor = DecoderFlavor::min_sum;
        else
            throw std::runtime_error("sim config: decoder must be 'exact' or 'minsum'");
    }
    return cfg;
}

SimConfig load_sim_config(const std::string& path) {
    return parse_sim_config(read_file(path), std::filesystem::path(path).parent_path().string());
}

std::string report_to_json(const SimReport& report) {
    json points = json::array();
    for (const SnrRecord& rec : report.points)
        points.push_back({{"ebn0_db", rec.ebn0_db},
                          {"frames", rec.frames},
                          {"errors", rec.errors},
                          {"bler", rec.bler},
                          {"ci_lo", rec.ci_lo},
                          {"ci_hi", rec.ci_hi}});
    json j{{"schema", "polaraut/1"},
           {"t", report.t},
           {"mode", to_string(report.mode)},
           {"aut_structure", report.aut_structure},
           {"inv_structure", report.inv_structure},
           {"class_count", report.class_count},
           {"seed", report.seed},
           {"points", points},
           {"wall_seconds", report.wall_seconds}};
    return j.dump(2);
}

std::string report_to_csv(const SimReport& report) {
    std::ostringstream out;
    out << "ebn0_db,frames,errors,bler,ci_lo,ci_hi,mode,t\n";
    for (const SnrRecord& rec : report.points)
        out << rec.ebn0_db << ',' << rec.frames << ',' << rec.errors << ',' << rec.bler << ',' << rec.ci_lo
            << ',' << rec.ci_hi << ',' << to_string(report.mode) << ',' << report.t << '\n';
    return out.str();
}

std::string permutation_to_json(const Permutation& p) {
    json arr = json::array();
    for (std::uint32_t v : p.table())
        arr.push_back(v);
    return arr.dump();
}

}  // namespace polaraut
