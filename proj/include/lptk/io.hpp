#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lptk/fitting.hpp"
#include "lptk/grid.hpp"
#include "lptk/transport.hpp"

namespace lptk {

// %.17g formatting used by every writer; round-trips IEEE doubles exactly.
std::string format_g17(double v);

// trace-v1: "# trace-v1" header, "# key=value" metadata (parameter snapshot,
// eta_used, b_axis), then "B_tesla,rho_ohm" data rows. B strictly increasing.
// An empty body with a valid header parses to a zero-length trace.
std::string serialize_trace(const TransportTrace& t);
TransportTrace parse_trace(const std::string& text);

// map-v1: "# map-v1", "# b_axis=start,stop,count", "# f_axis=start,stop,count",
// "# quantity=transmission|photoresponse", then exactly count_B*count_f rows
// "iB,if,value" in row-major order.
std::string serialize_map(const ResponseMap& m);
ResponseMap parse_map(const std::string& text);

// peaks-v1: "# peaks-v1", optional "# source=...", rows "B_tesla,f_hz,weight".
std::string serialize_peaks(const PeakList& p);
PeakList parse_peaks(const std::string& text);

// Grayscale rendering of a map: binary PGM (P5), width = count_f, height =
// count_B, maxval 255. Transmission maps use
//   pixel = round(255 (v - v_min)/(v_max - v_min));
// photo-response maps are diverging, value 0 at pixel 128 with a symmetric
// range v_sym = max(|v_min|, |v_max|):
//   pixel = round(128 + 127 v / v_sym).
// The sidecar text records the exact mapping so the image is reconstructible.
struct RenderedImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
  std::string sidecar;
};

RenderedImage render_map(const ResponseMap& m);

// Atomic writes: stream to "<path>.tmp" in the target directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
// Writes the P5 payload to `path` and the sidecar to "<path>.txt".
void write_pgm_atomic(const std::filesystem::path& path, const RenderedImage& img);

std::string read_file(const std::filesystem::path& path);

}  // namespace lptk
