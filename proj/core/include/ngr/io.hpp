#pragma once

#include "ngr/baselines.hpp"
#include "ngr/solver.hpp"
#include "ngr/tensor.hpp"

#include <string>

namespace ngr::io {

// 8-bit grayscale or RGB PNG; values scaled to [0,1] by /255. Everything else
// is rejected. write_png clamps to [0,1] and rounds half away from zero.
Tensor3 read_png(const std::string& path);
void write_png(const Tensor3& x, const std::string& path);

// Tensor file: magic "NGRT", u32 LE version, u32 LE H/W/C, then C planes of
// H×W little-endian float32, row-major. 32-bit storage, 64-bit compute.
Tensor3 read_tensor(const std::string& path);
void write_tensor(const Tensor3& x, const std::string& path);

// Convenience: PNG or tensor file, chosen by the ".png" extension.
Tensor3 read_image(const std::string& path);
void write_image(const Tensor3& x, const std::string& path);

// Plain-text `key = value` configuration, '#' comments, unknown keys rejected,
// missing keys defaulted. Errors carry the offending line number.
solver::SolverConfig read_solver_config(const std::string& path);
solver::DenoiseConfig read_denoise_config(const std::string& path);
baselines::TvConfig read_tv_config(const std::string& path);

void write_text(const std::string& content, const std::string& path);

} // namespace ngr::io
