// matrix_io.cpp — JSON matrix file loading, validation, and saving.

#include "ence/matrix_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ence {

namespace {

using nlohmann::json;

FileKind kind_from_name(const std::string& name) {
    if (name == "density") return FileKind::Density;
    if (name == "superoperator") return FileKind::Superoperator;
    if (name == "general") return FileKind::General;
    throw std::invalid_argument("matrix file: unknown kind \"" + name + "\"");
}

bool is_perfect_square(int n) {
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return r * r == n;
}

}  // namespace

std::string file_kind_name(FileKind kind) {
    switch (kind) {
        case FileKind::Density: return "density";
        case FileKind::Superoperator: return "superoperator";
        case FileKind::General: return "general";
    }
    return "general";
}

MatrixFile parse_matrix_file(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("matrix file: top level must be a JSON object");
    }
    MatrixFile f;
    f.kind = kind_from_name(j.at("kind").get<std::string>());
    f.dim = j.at("dim").get<int>();
    if (f.dim < 1) {
        throw std::invalid_argument("matrix file: dim must be >= 1");
    }
    if (j.contains("dims")) {
        const auto& d = j.at("dims");
        if (!d.is_array() || d.size() != 2) {
            throw std::invalid_argument("matrix file: dims must be [d_a, d_b]");
        }
        BipartiteDims dims{d.at(0).get<int>(), d.at(1).get<int>()};
        if (dims.d_a < 1 || dims.d_b < 1 || dims.dim() != f.dim) {
            throw std::invalid_argument("matrix file: dims product must equal dim");
        }
        f.dims = dims;
    }
    const auto& data = j.at("data");
    const std::size_t expected = static_cast<std::size_t>(f.dim) * f.dim;
    if (!data.is_array() || data.size() != expected) {
        std::ostringstream os;
        os << "matrix file: data must hold dim^2 = " << expected
           << " entries, got " << (data.is_array() ? data.size() : 0);
        throw std::invalid_argument(os.str());
    }
    f.data.resize(f.dim, f.dim);
    for (std::size_t idx = 0; idx < expected; ++idx) {
        const auto& entry = data.at(idx);
        if (!entry.is_array() || entry.size() != 2) {
            throw std::invalid_argument("matrix file: entries must be [re, im] pairs");
        }
        const int row = static_cast<int>(idx) / f.dim;
        const int col = static_cast<int>(idx) % f.dim;
        f.data(row, col) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
    if (!all_finite(f.data)) {
        throw std::invalid_argument("matrix file: non-finite entries");
    }
    if (f.kind == FileKind::Density) {
        validate_density(f.data);
    } else if (f.kind == FileKind::Superoperator && !is_perfect_square(f.dim)) {
        throw std::invalid_argument(
            "matrix file: superoperator dim must be a perfect square");
    }
    return f;
}

MatrixFile load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("matrix file: cannot open \"" + path + "\"");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("matrix file: parse error in \"" + path +
                                    "\": " + e.what());
    }
    return parse_matrix_file(j);
}

json matrix_file_to_json(const MatrixFile& f) {
    json j;
    j["kind"] = file_kind_name(f.kind);
    j["dim"] = f.dim;
    if (f.dims) j["dims"] = {f.dims->d_a, f.dims->d_b};
    j["vec"] = "column-stacking";
    j["major"] = "A-slow";
    json data = json::array();
    for (int row = 0; row < f.dim; ++row)
        for (int col = 0; col < f.dim; ++col)
            data.push_back({f.data(row, col).real(), f.data(row, col).imag()});
    j["data"] = std::move(data);
    return j;
}

void save_matrix_file(const std::string& path, const MatrixFile& f) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("matrix file: cannot write \"" + path + "\"");
    }
    out << matrix_file_to_json(f).dump(2) << '\n';
}

}  // namespace ence
