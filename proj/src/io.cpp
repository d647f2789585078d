#include "abeltomo/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace abeltomo::io {

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw Error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidInput("complex numbers are [re, im] arrays");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CMatrixd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const CVectord& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
    return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(what + ": " + e.what());
    }
}

int require_n(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw InvalidInput("missing integer field \"n\"");
    }
    const int n = j["n"].get<int>();
    if (n < 2) throw InvalidInput("n must be >= 2");
    return n;
}

}  // namespace

StateFile parse_state(const json& j) {
    StateFile s;
    s.n = require_n(j);
    if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidInput("missing string field \"kind\"");
    s.kind = j["kind"].get<std::string>();
    if (!j.contains("data") || !j["data"].is_array()) throw InvalidInput("missing array field \"data\"");
    const auto& data = j["data"];
    const int n = s.n;
    if (s.kind == "pure") {
        if (static_cast<int>(data.size()) != n) throw InvalidInput("pure state needs n amplitudes");
        CVectord f(n);
        for (int i = 0; i < n; ++i) f(i) = complex_from_json(data[i]);
        try {
            require_state_vector(f);
        } catch (const InvalidState& e) {
            throw InvalidInput(e.what());
        }
        s.rho = projector(f);
        s.amplitudes = f;
    } else if (s.kind == "mixed") {
        CMatrixd rho(n, n);
        const bool flat = static_cast<int>(data.size()) == n * n;
        if (!flat && static_cast<int>(data.size()) != n) throw InvalidInput("mixed state needs n x n entries");
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const json& e = flat ? data[r * n + c] : data[r];
                if (!flat && (!e.is_array() || static_cast<int>(e.size()) != n)) {
                    throw InvalidInput("mixed state rows must have n entries");
                }
                rho(r, c) = complex_from_json(flat ? e : e[c]);
            }
        }
        try {
            require_density_matrix(rho);
        } catch (const InvalidState& e) {
            throw InvalidInput(e.what());
        }
        s.rho = rho;
    } else {
        throw InvalidInput("kind must be \"pure\" or \"mixed\"");
    }
    return s;
}

StateFile read_state(const fs::path& path) { return parse_state(parse_json(read_file(path), path.string())); }

json state_json(const CVectord& f) {
    return json{{"n", f.size()}, {"kind", "pure"}, {"data", to_json(f)}};
}

json state_json(const CMatrixd& rho) {
    json data = json::array();
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.cols(); ++c) data.push_back(to_json(rho(r, c)));
    return json{{"n", rho.rows()}, {"kind", "mixed"}, {"data", data}};
}

WeylChannel<double> parse_channel(const json& j) {
    const int n = require_n(j);
    if (!j.contains("q") || !j["q"].is_array() || static_cast<int>(j["q"].size()) != n) {
        throw InvalidInput("channel needs an n x n array \"q\"");
    }
    RMatrixd q(n, n);
    for (int a = 0; a < n; ++a) {
        const auto& row = j["q"][a];
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw InvalidInput("q rows must have n entries");
        for (int b = 0; b < n; ++b) {
            if (!row[b].is_number()) throw InvalidInput("q entries must be numbers");
            q(a, b) = row[b].get<double>();
        }
    }
    try {
        return WeylChannel<double>(q);
    } catch (const InvalidChannel& e) {
        throw InvalidInput(e.what());
    }
}

WeylChannel<double> read_channel(const fs::path& path) {
    return parse_channel(parse_json(read_file(path), path.string()));
}

json channel_json(const WeylChannel<double>& ch) {
    json q = json::array();
    for (int a = 0; a < ch.n(); ++a) {
        json row = json::array();
        for (int b = 0; b < ch.n(); ++b) row.push_back(ch.q(a, b));
        q.push_back(std::move(row));
    }
    return json{{"n", ch.n()}, {"q", q}};
}

std::string tomogram_csv(const Tomogram<double>& t, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "l";
    for (int j = 0; j < t.n(); ++j) out << ",j" << j;
    out << "\n";
    for (Eigen::Index l = 0; l < t.rows.rows(); ++l) {
        out << l;
        for (int j = 0; j < t.n(); ++j) out << "," << format_double(t.rows(l, j));
        out << "\n";
    }
    return out.str();
}

Tomogram<double> parse_tomogram_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() < 2) throw InvalidInput("tomogram row too short: " + line);
        std::size_t pos = 0;
        int label = 0;
        try {
            label = std::stoi(cells[0], &pos);
        } catch (const std::exception&) {
            throw InvalidInput("bad line label: " + cells[0]);
        }
        if (label != static_cast<int>(rows.size())) throw InvalidInput("tomogram rows must be labelled 0..n in order");
        std::vector<double> vals;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            try {
                vals.push_back(std::stod(cells[c]));
            } catch (const std::exception&) {
                throw InvalidInput("bad number: " + cells[c]);
            }
        }
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw InvalidInput("empty tomogram");
    const auto n = rows.front().size();
    if (n < 2 || rows.size() != n + 1) throw InvalidInput("tomogram must have n+1 rows of n entries");
    Tomogram<double> t{RMatrixd(n + 1, n)};
    for (std::size_t l = 0; l <= n; ++l) {
        if (rows[l].size() != n) throw InvalidInput("ragged tomogram row " + std::to_string(l));
        for (std::size_t j = 0; j < n; ++j) t.rows(l, j) = rows[l][j];
    }
    return t;
}

Tomogram<double> read_tomogram(const fs::path& path) { return parse_tomogram_csv(read_file(path)); }

json char_json(const CharFunction<double>& F) {
    return json{{"n", F.n()}, {"index", "values[chi][g]"}, {"values", to_json(F.values)}};
}

GridWavefunction<double> parse_grid_state(const json& j) {
    if (!j.is_object() || j.value("kind", "") != "grid") throw InvalidInput("grid state needs kind \"grid\"");
    if (!j.contains("x_min") || !j.contains("x_max") || !j.contains("data")) {
        throw InvalidInput("grid state needs x_min, x_max, data");
    }
    const auto& data = j["data"];
    if (!data.is_array()) throw InvalidInput("grid data must be an array");
    CVectord s(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) s(i) = complex_from_json(data[i]);
    try {
        return GridWavefunction<double>(j["x_min"].get<double>(), j["x_max"].get<double>(), s);
    } catch (const InvalidState& e) {
        throw InvalidInput(e.what());
    }
}

CircleState<double> parse_circle_state(const json& j) {
    if (!j.is_object() || j.value("kind", "") != "circle") throw InvalidInput("circle state needs kind \"circle\"");
    if (!j.contains("M") || !j["M"].is_number_integer() || !j.contains("data") || !j["data"].is_array()) {
        throw InvalidInput("circle state needs integer M and data");
    }
    const int M = j["M"].get<int>();
    const auto& data = j["data"];
    CVectord c(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) c(i) = complex_from_json(data[i]);
    try {
        return CircleState<double>(M, c);
    } catch (const InvalidState& e) {
        throw InvalidInput(e.what());
    }
}

json circle_json(const CircleState<double>& s) {
    return json{{"kind", "circle"}, {"M", s.M()}, {"data", to_json(s.coeffs())}};
}

}  // namespace abeltomo::io
