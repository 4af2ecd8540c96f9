#include "lptk/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "lptk/errors.hpp"

namespace lptk {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, long line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ParseError("invalid number '" + s + "'", line);
  return v;
}

long parse_long(const std::string& s, long line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw ParseError("invalid integer '" + s + "'", line);
  return v;
}

bool is_comment(const std::string& line) { return !line.empty() && line[0] == '#'; }

// "# key=value" -> (key, value); everything after the first '=' is the value.
bool parse_meta(const std::string& line, std::string& key, std::string& value) {
  if (line.size() < 2 || line[0] != '#') return false;
  std::size_t start = 1;
  while (start < line.size() && line[start] == ' ') ++start;
  const std::size_t eq = line.find('=', start);
  if (eq == std::string::npos) return false;
  key = line.substr(start, eq - start);
  value = line.substr(eq + 1);
  return true;
}

Grid1D parse_axis_value(const std::string& value, long line) {
  const std::vector<std::string> f = split_csv(value);
  if (f.size() != 3) throw ParseError("axis must be start,stop,count", line);
  const double start = parse_double(f[0], line);
  const double stop = parse_double(f[1], line);
  const long count = parse_long(f[2], line);
  if (count < 2) throw ParseError("axis count must be >= 2", line);
  try {
    return Grid1D(start, stop, count);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// trace-v1

std::string serialize_trace(const TransportTrace& t) {
  std::ostringstream os;
  os << "# trace-v1\n";
  const MaterialParams& m = t.material;
  const ResonatorParams& r = t.resonator;
  os << "# n_s=" << format_g17(m.n_s) << "\n";
  os << "# m_star=" << format_g17(m.m_star) << "\n";
  os << "# mu=" << format_g17(m.mu) << "\n";
  os << "# tau_q=" << format_g17(m.tau_q) << "\n";
  os << "# T_el=" << format_g17(m.T_el) << "\n";
  os << "# W=" << format_g17(m.W) << "\n";
  os << "# L=" << format_g17(m.L) << "\n";
  os << "# f_cav=" << format_g17(r.f_cav) << "\n";
  os << "# Q=" << format_g17(r.Q) << "\n";
  os << "# eta=" << format_g17(r.eta) << "\n";
  os << "# tau_p=" << format_g17(r.tau_p) << "\n";
  os << "# f_p=" << format_g17(r.f_p) << "\n";
  os << "# eta_used=" << format_g17(t.eta_used) << "\n";
  if (t.rho_xx.size() > 0) {
    os << "# b_axis=" << format_g17(t.b_axis.start) << "," << format_g17(t.b_axis.stop) << ","
       << t.b_axis.count << "\n";
    for (Eigen::Index i = 0; i < t.rho_xx.size(); ++i)
      os << format_g17(t.b_axis.sample(i)) << "," << format_g17(t.rho_xx[i]) << "\n";
  }
  return os.str();
}

TransportTrace parse_trace(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != "# trace-v1")
    throw ParseError("expected '# trace-v1' header", 1);

  TransportTrace t;
  bool have_axis = false;
  std::size_t i = 1;
  for (; i < lines.size() && is_comment(lines[i]); ++i) {
    const long ln = static_cast<long>(i) + 1;
    std::string key, value;
    if (!parse_meta(lines[i], key, value)) throw ParseError("malformed metadata line", ln);
    if (key == "n_s") t.material.n_s = parse_double(value, ln);
    else if (key == "m_star") t.material.m_star = parse_double(value, ln);
    else if (key == "mu") t.material.mu = parse_double(value, ln);
    else if (key == "tau_q") t.material.tau_q = parse_double(value, ln);
    else if (key == "T_el") t.material.T_el = parse_double(value, ln);
    else if (key == "W") t.material.W = parse_double(value, ln);
    else if (key == "L") t.material.L = parse_double(value, ln);
    else if (key == "f_cav") t.resonator.f_cav = parse_double(value, ln);
    else if (key == "Q") t.resonator.Q = parse_double(value, ln);
    else if (key == "eta") t.resonator.eta = parse_double(value, ln);
    else if (key == "tau_p") t.resonator.tau_p = parse_double(value, ln);
    else if (key == "f_p") t.resonator.f_p = parse_double(value, ln);
    else if (key == "eta_used") t.eta_used = parse_double(value, ln);
    else if (key == "b_axis") {
      t.b_axis = parse_axis_value(value, ln);
      have_axis = true;
    } else {
      throw ParseError("unknown trace metadata key '" + key + "'", ln);
    }
  }

  std::vector<double> b, rho;
  for (; i < lines.size(); ++i) {
    const long ln = static_cast<long>(i) + 1;
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = split_csv(lines[i]);
    if (f.size() != 2) throw ParseError("trace row must be B,rho", ln);
    const double bv = parse_double(f[0], ln);
    const double rv = parse_double(f[1], ln);
    if (!b.empty() && !(bv > b.back()))
      throw ParseError("trace B values must be strictly increasing", ln);
    if (rv < 0.0) throw ParseError("trace rho must be >= 0", ln);
    b.push_back(bv);
    rho.push_back(rv);
  }

  if (have_axis) {
    if (static_cast<Eigen::Index>(rho.size()) != t.b_axis.count)
      throw ParseError("trace row count " + std::to_string(rho.size()) +
                       " does not match b_axis count " + std::to_string(t.b_axis.count));
  } else if (rho.size() >= 2) {
    t.b_axis = Grid1D(b.front(), b.back(), static_cast<Eigen::Index>(b.size()));
  }
  t.rho_xx = Eigen::Map<const Eigen::ArrayXd>(rho.data(), static_cast<Eigen::Index>(rho.size()));
  return t;
}

// ---------------------------------------------------------------------------
// map-v1

namespace {

const char* quantity_name(MapQuantity q) {
  return q == MapQuantity::Transmission ? "transmission" : "photoresponse";
}

MapQuantity quantity_from_name(const std::string& s, long line) {
  if (s == "transmission") return MapQuantity::Transmission;
  if (s == "photoresponse") return MapQuantity::PhotoResponse;
  throw ParseError("unknown map quantity '" + s + "'", line);
}

}  // namespace

std::string serialize_map(const ResponseMap& m) {
  std::ostringstream os;
  os << "# map-v1\n";
  os << "# b_axis=" << format_g17(m.grid.b_axis.start) << "," << format_g17(m.grid.b_axis.stop)
     << "," << m.grid.b_axis.count << "\n";
  os << "# f_axis=" << format_g17(m.grid.f_axis.start) << "," << format_g17(m.grid.f_axis.stop)
     << "," << m.grid.f_axis.count << "\n";
  os << "# quantity=" << quantity_name(m.quantity) << "\n";
  for (Eigen::Index ib = 0; ib < m.grid.b_axis.count; ++ib)
    for (Eigen::Index jf = 0; jf < m.grid.f_axis.count; ++jf)
      os << ib << "," << jf << "," << format_g17(m.grid.values(ib, jf)) << "\n";
  return os.str();
}

ResponseMap parse_map(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != "# map-v1") throw ParseError("expected '# map-v1' header", 1);

  ResponseMap map;
  bool have_b = false, have_f = false, have_q = false;
  std::size_t i = 1;
  for (; i < lines.size() && is_comment(lines[i]); ++i) {
    const long ln = static_cast<long>(i) + 1;
    std::string key, value;
    if (!parse_meta(lines[i], key, value)) throw ParseError("malformed metadata line", ln);
    if (key == "b_axis") {
      map.grid.b_axis = parse_axis_value(value, ln);
      have_b = true;
    } else if (key == "f_axis") {
      map.grid.f_axis = parse_axis_value(value, ln);
      have_f = true;
    } else if (key == "quantity") {
      map.quantity = quantity_from_name(value, ln);
      have_q = true;
    } else {
      throw ParseError("unknown map metadata key '" + key + "'", ln);
    }
  }
  if (!have_b || !have_f || !have_q)
    throw ParseError("map requires b_axis, f_axis and quantity metadata",
                     static_cast<long>(i));

  const Eigen::Index nb = map.grid.b_axis.count;
  const Eigen::Index nf = map.grid.f_axis.count;
  map.grid.values.resize(nb, nf);

  Eigen::Index row = 0;
  const Eigen::Index expected = nb * nf;
  for (; i < lines.size(); ++i) {
    const long ln = static_cast<long>(i) + 1;
    if (lines[i].empty()) continue;
    if (row >= expected)
      throw ParseError("map has more rows than expected (" + std::to_string(expected) + ")", ln);
    const std::vector<std::string> f = split_csv(lines[i]);
    if (f.size() != 3) throw ParseError("map row must be iB,if,value", ln);
    const long ib = parse_long(f[0], ln);
    const long jf = parse_long(f[1], ln);
    const double v = parse_double(f[2], ln);
    const Eigen::Index want_ib = row / nf;
    const Eigen::Index want_jf = row % nf;
    if (ib != want_ib || jf != want_jf)
      throw ParseError("map row out of order: expected (" + std::to_string(want_ib) + "," +
                       std::to_string(want_jf) + "), got (" + std::to_string(ib) + "," +
                       std::to_string(jf) + ")", ln);
    map.grid.values(want_ib, want_jf) = v;
    ++row;
  }
  if (row != expected)
    throw ParseError("map row count mismatch: expected " + std::to_string(expected) + ", got " +
                     std::to_string(row));
  return map;
}

// ---------------------------------------------------------------------------
// peaks-v1

std::string serialize_peaks(const PeakList& p) {
  std::ostringstream os;
  os << "# peaks-v1\n";
  os << "# source=" << p.source << "\n";
  for (const PeakPoint& pt : p.points)
    os << format_g17(pt.B) << "," << format_g17(pt.f) << "," << format_g17(pt.weight) << "\n";
  return os.str();
}

PeakList parse_peaks(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != "# peaks-v1")
    throw ParseError("expected '# peaks-v1' header", 1);

  std::string source;
  std::size_t i = 1;
  for (; i < lines.size() && is_comment(lines[i]); ++i) {
    const long ln = static_cast<long>(i) + 1;
    std::string key, value;
    if (!parse_meta(lines[i], key, value)) throw ParseError("malformed metadata line", ln);
    if (key == "source") source = value;
    else throw ParseError("unknown peaks metadata key '" + key + "'", ln);
  }

  std::vector<PeakPoint> pts;
  for (; i < lines.size(); ++i) {
    const long ln = static_cast<long>(i) + 1;
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = split_csv(lines[i]);
    if (f.size() != 3) throw ParseError("peaks row must be B,f,weight", ln);
    PeakPoint pt;
    pt.B = parse_double(f[0], ln);
    pt.f = parse_double(f[1], ln);
    pt.weight = parse_double(f[2], ln);
    if (!(pt.B > 0.0 && pt.f > 0.0 && pt.weight > 0.0))
      throw ParseError("peaks row fields must be > 0", ln);
    pts.push_back(pt);
  }
  return PeakList::from_file_rows(std::move(pts), std::move(source));
}

// ---------------------------------------------------------------------------
// PGM rendering

RenderedImage render_map(const ResponseMap& m) {
  RenderedImage img;
  img.height = static_cast<int>(m.grid.b_axis.count);
  img.width = static_cast<int>(m.grid.f_axis.count);
  img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));

  const double v_min = m.grid.values.minCoeff();
  const double v_max = m.grid.values.maxCoeff();

  std::ostringstream meta;
  meta << "quantity=" << quantity_name(m.quantity) << "\n";
  meta << "width=" << img.width << "\n";
  meta << "height=" << img.height << "\n";
  meta << "v_min=" << format_g17(v_min) << "\n";
  meta << "v_max=" << format_g17(v_max) << "\n";

  auto store = [&](Eigen::Index ib, Eigen::Index jf, long pix) {
    pix = std::max(0L, std::min(255L, pix));
    img.pixels[static_cast<std::size_t>(ib) * static_cast<std::size_t>(img.width) +
               static_cast<std::size_t>(jf)] = static_cast<std::uint8_t>(pix);
  };

  if (m.quantity == MapQuantity::PhotoResponse) {
    const double v_sym = std::max(std::abs(v_min), std::abs(v_max));
    meta << "mode=diverging\n";
    meta << "v_sym=" << format_g17(v_sym) << "\n";
    meta << "mapping=round(128 + 127*v/v_sym), clamped to [0,255]\n";
    for (Eigen::Index ib = 0; ib < m.grid.values.rows(); ++ib)
      for (Eigen::Index jf = 0; jf < m.grid.values.cols(); ++jf) {
        const double v = m.grid.values(ib, jf);
        const long pix = (v_sym == 0.0) ? 128 : std::lround(128.0 + 127.0 * v / v_sym);
        store(ib, jf, pix);
      }
  } else {
    meta << "mode=grayscale\n";
    meta << "mapping=round(255*(v - v_min)/(v_max - v_min))\n";
    const double range = v_max - v_min;
    for (Eigen::Index ib = 0; ib < m.grid.values.rows(); ++ib)
      for (Eigen::Index jf = 0; jf < m.grid.values.cols(); ++jf) {
        const double v = m.grid.values(ib, jf);
        const long pix = (range == 0.0) ? 0 : std::lround(255.0 * (v - v_min) / range);
        store(ib, jf, pix);
      }
  }
  img.sidecar = meta.str();
  return img;
}

// ---------------------------------------------------------------------------
// files

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open '" + tmp.string() + "' for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!os) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_pgm_atomic(const std::filesystem::path& path, const RenderedImage& img) {
  std::ostringstream os;
  os << "P5\n" << img.width << " " << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
  write_file_atomic(path, os.str());
  write_file_atomic(path.string() + ".txt", img.sidecar);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace lptk
