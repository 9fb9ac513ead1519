// matrix_io.hpp — self-describing JSON matrix files shared by the CLI and
// the library. Complex entries are [re, im] pairs in row-major order; every
// file restates the conventions it was written under.

#pragma once

#include "ence/matcore.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>

namespace ence {

enum class FileKind { Density, Superoperator, General };

struct MatrixFile {
    FileKind kind{FileKind::General};
    int dim{0};
    std::optional<BipartiteDims> dims;
    CMatrix data;
};

// Throws std::invalid_argument on malformed content or violated invariants
// of the declared kind (density checks, superoperator square dimension).
MatrixFile parse_matrix_file(const nlohmann::json& j);
MatrixFile load_matrix_file(const std::string& path);

nlohmann::json matrix_file_to_json(const MatrixFile& f);
void save_matrix_file(const std::string& path, const MatrixFile& f);

std::string file_kind_name(FileKind kind);

}  // namespace ence
