#include "sosgap/io/program_io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sosgap/sdp/svec.hpp"

namespace sosgap {

using nlohmann::json;

namespace {

json metadata_json(const ConicProgram& p) {
  json m;
  m["group"] = p.metadata.group;
  m["radius"] = p.metadata.radius;
  m["basis_fingerprint"] = p.metadata.basis_fingerprint;
  m["product_fingerprint"] = p.metadata.product_fingerprint;
  m["variant"] = p.metadata.variant;
  m["lambda_upper"] = p.metadata.lambda_upper ? json(*p.metadata.lambda_upper) : json(nullptr);
  return m;
}

json variables_json(const ConicProgram& p) {
  if (!p.variables) return nullptr;
  return {{"lambda", p.variables->lambda},
          {"gram_offset", p.variables->gram_offset},
          {"gram_side", p.variables->gram_side},
          {"gram_form", to_string(p.variables->form)}};
}

void read_metadata(const json& m, ConicProgram& p) {
  p.metadata.group = m.at("group").get<std::string>();
  p.metadata.radius = m.at("radius").get<int>();
  p.metadata.basis_fingerprint = m.at("basis_fingerprint").get<std::string>();
  p.metadata.product_fingerprint = m.at("product_fingerprint").get<std::string>();
  p.metadata.variant = m.at("variant").get<std::string>();
  if (!m.at("lambda_upper").is_null()) p.metadata.lambda_upper = m.at("lambda_upper").get<double>();
}

void read_variables(const json& v, ConicProgram& p) {
  if (v.is_null()) return;
  p.variables = VariableLayout{v.at("lambda").get<std::size_t>(), v.at("gram_offset").get<std::size_t>(),
                               v.at("gram_side").get<std::size_t>(),
                               gram_form_from_string(v.value("gram_form", std::string("full")))};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Finds y with fl(y / sqrt(2)) == f, so that re-exporting reproduces f.
double rescale_offdiagonal(double f) {
  if (!std::isfinite(f) || f == 0.0) return f * kSqrt2;
  const double guess = f * kSqrt2;
  double candidate = std::nextafter(std::nextafter(guess, -INFINITY), -INFINITY);
  for (int step = 0; step < 5; ++step, candidate = std::nextafter(candidate, INFINITY)) {
    if (candidate / kSqrt2 == f) return candidate;
  }
  return guess;
}

}  // namespace

std::string program_to_json(const ConicProgram& p) {
  json j;
  j["format"] = "sosgap-conic-program";
  j["version"] = 1;
  j["metadata"] = metadata_json(p);
  j["rows"] = p.rows;
  j["cols"] = p.cols;
  j["cones"] = {{"zero", p.cones.zero}, {"nonneg", p.cones.nonneg}, {"psd", p.cones.psd}};
  j["variables"] = variables_json(p);
  j["c"] = p.c;
  j["b"] = p.b;
  std::vector<std::uint32_t> rows, cols;
  std::vector<double> vals;
  rows.reserve(p.a.size());
  cols.reserve(p.a.size());
  vals.reserve(p.a.size());
  for (const auto& t : p.a) {
    rows.push_back(t.row);
    cols.push_back(t.col);
    vals.push_back(t.value);
  }
  j["A"] = {{"row", rows}, {"col", cols}, {"val", vals}};
  return j.dump();
}

ConicProgram program_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("program json: ") + e.what());
  }
  try {
    if (j.at("format") != "sosgap-conic-program") throw InputError("program json: wrong format tag");
    ConicProgram p;
    read_metadata(j.at("metadata"), p);
    p.rows = j.at("rows").get<std::size_t>();
    p.cols = j.at("cols").get<std::size_t>();
    const json& cones = j.at("cones");
    p.cones.zero = cones.at("zero").get<std::size_t>();
    p.cones.nonneg = cones.at("nonneg").get<std::size_t>();
    p.cones.psd = cones.at("psd").get<std::vector<std::size_t>>();
    read_variables(j.at("variables"), p);
    p.c = j.at("c").get<std::vector<double>>();
    p.b = j.at("b").get<std::vector<double>>();
    const auto rows = j.at("A").at("row").get<std::vector<std::uint32_t>>();
    const auto cols = j.at("A").at("col").get<std::vector<std::uint32_t>>();
    const auto vals = j.at("A").at("val").get<std::vector<double>>();
    if (rows.size() != cols.size() || rows.size() != vals.size()) {
      throw InputError("program json: triplet arrays differ in length");
    }
    p.a.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) p.a.push_back({rows[i], cols[i], vals[i]});
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("program json: ") + e.what());
  }
}

std::string program_to_sdpa(const ConicProgram& p) {
  p.validate();
  std::ostringstream os;
  const std::size_t lp = 2 * p.cones.zero + p.cones.nonneg;
  os << "* sosgap-cones " << json({{"zero", p.cones.zero}, {"nonneg", p.cones.nonneg}, {"psd", p.cones.psd}}).dump()
     << "\n";
  os << "* sosgap-metadata " << json({{"metadata", metadata_json(p)}, {"variables", variables_json(p)}}).dump()
     << "\n";
  os << p.cols << "\n";
  const std::size_t blocks = (lp > 0 ? 1 : 0) + p.cones.psd.size();
  os << blocks << "\n";
  {
    bool first = true;
    if (lp > 0) {
      os << "-" << lp;
      first = false;
    }
    for (const std::size_t side : p.cones.psd) {
      os << (first ? "" : " ") << side;
      first = false;
    }
    os << "\n";
  }
  for (std::size_t i = 0; i < p.cols; ++i) os << (i ? " " : "") << format_double(p.c[i]);
  os << "\n";

  // Map each row to (block, i, j, scale-is-offdiagonal) entries.
  struct Slot {
    int block;
    std::size_t i;
    std::size_t j;
    bool offdiag;
  };
  std::vector<std::vector<std::pair<Slot, double>>> row_slots(p.rows);
  const int psd_block0 = lp > 0 ? 2 : 1;
  for (std::size_t r = 0; r < p.rows; ++r) {
    if (r < p.cones.zero) {
      row_slots[r] = {{{1, 2 * r + 1, 2 * r + 1, false}, 1.0}, {{1, 2 * r + 2, 2 * r + 2, false}, -1.0}};
    } else if (r < p.cones.zero + p.cones.nonneg) {
      const std::size_t pos = 2 * p.cones.zero + (r - p.cones.zero) + 1;
      row_slots[r] = {{{1, pos, pos, false}, 1.0}};
    }
  }
  {
    std::size_t r = p.cones.psd_offset();
    for (std::size_t b = 0; b < p.cones.psd.size(); ++b) {
      const std::size_t n = p.cones.psd[b];
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j; i < n; ++i) {
          row_slots[r++] = {{{psd_block0 + static_cast<int>(b), j + 1, i + 1, i != j}, 1.0}};
        }
      }
    }
  }
  // F_0 = -b; F_k = -A_k. Entries grouped by matrix number, then block/row/col.
  struct Entry {
    std::size_t mat;
    int block;
    std::size_t i;
    std::size_t j;
    double value;
  };
  std::vector<Entry> entries;
  const auto emit = [&](std::size_t mat, std::size_t row, double coeff) {
    for (const auto& [slot, sign] : row_slots[row]) {
      double v = -coeff * sign;
      if (slot.offdiag) v = -coeff / kSqrt2;
      if (v != 0.0) entries.push_back({mat, slot.block, slot.i, slot.j, v});
    }
  };
  for (std::size_t r = 0; r < p.rows; ++r) {
    if (p.b[r] != 0.0) emit(0, r, p.b[r]);
  }
  for (const auto& t : p.a) emit(t.col + 1, t.row, t.value);
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.mat != y.mat) return x.mat < y.mat;
    if (x.block != y.block) return x.block < y.block;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });
  for (const auto& e : entries) {
    os << e.mat << " " << e.block << " " << e.i << " " << e.j << " " << format_double(e.value) << "\n";
  }
  return os.str();
}

ConicProgram program_from_sdpa(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  ConicProgram p;
  bool have_cones = false;
  std::vector<std::string> body;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '*' || line[first] == '"') {
      const std::string rest = line.substr(first + 1);
      const auto tag = rest.find_first_not_of(' ');
      if (tag != std::string::npos && rest.compare(tag, 13, "sosgap-cones ") == 0) {
        const json c = json::parse(rest.substr(tag + 13));
        p.cones.zero = c.at("zero").get<std::size_t>();
        p.cones.nonneg = c.at("nonneg").get<std::size_t>();
        p.cones.psd = c.at("psd").get<std::vector<std::size_t>>();
        have_cones = true;
      } else if (tag != std::string::npos && rest.compare(tag, 16, "sosgap-metadata ") == 0) {
        const json m = json::parse(rest.substr(tag + 16));
        read_metadata(m.at("metadata"), p);
        read_variables(m.at("variables"), p);
      }
      continue;
    }
    body.push_back(line);
  }
  // SDPA allows ',', '(', ')', '{', '}' as separators in the header lines.
  const auto clean = [](std::string s) {
    for (char& ch : s) {
      if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}') ch = ' ';
    }
    return s;
  };
  if (body.size() < 4) throw InputError("sdpa: truncated header");
  std::size_t m = 0;
  std::size_t nblocks = 0;
  {
    std::istringstream h(clean(body[0]));
    if (!(h >> m)) throw InputError("sdpa: bad variable count");
    std::istringstream hb(clean(body[1]));
    if (!(hb >> nblocks)) throw InputError("sdpa: bad block count");
  }
  std::vector<long long> block_struct;
  {
    std::istringstream h(clean(body[2]));
    long long v;
    while (block_struct.size() < nblocks && h >> v) block_struct.push_back(v);
    if (block_struct.size() != nblocks) throw InputError("sdpa: bad block structure");
  }
  p.cols = m;
  p.c.assign(m, 0.0);
  std::size_t next_line = 3;
  {
    std::size_t got = 0;
    while (got < m && next_line < body.size()) {
      std::istringstream h(clean(body[next_line++]));
      double v;
      while (got < m && h >> v) p.c[got++] = v;
    }
    if (got != m) throw InputError("sdpa: objective vector too short");
  }

  // Block geometry: the (single) diagonal block is the LP part.
  std::size_t lp = 0;
  std::vector<std::size_t> psd_sides;
  std::vector<int> psd_block_ids;
  int lp_block = -1;
  for (std::size_t b = 0; b < nblocks; ++b) {
    if (block_struct[b] < 0) {
      if (lp_block >= 0) throw InputError("sdpa: more than one diagonal block");
      lp_block = static_cast<int>(b) + 1;
      lp = static_cast<std::size_t>(-block_struct[b]);
    } else {
      psd_sides.push_back(static_cast<std::size_t>(block_struct[b]));
      psd_block_ids.push_back(static_cast<int>(b) + 1);
    }
  }
  if (!have_cones) {
    p.cones.zero = 0;
    p.cones.nonneg = lp;
    p.cones.psd = psd_sides;
  }
  if (2 * p.cones.zero + p.cones.nonneg != lp || p.cones.psd != psd_sides) {
    throw InputError("sdpa: cone comment does not match the block structure");
  }
  p.rows = p.cones.total();
  p.b.assign(p.rows, 0.0);
  std::map<int, std::size_t> psd_row0;
  {
    std::size_t r = p.cones.psd_offset();
    for (std::size_t k = 0; k < psd_sides.size(); ++k) {
      psd_row0[psd_block_ids[k]] = r;
      r += svec_length(psd_sides[k]);
    }
  }
  std::map<int, std::size_t> psd_side_of;
  for (std::size_t k = 0; k < psd_sides.size(); ++k) psd_side_of[psd_block_ids[k]] = psd_sides[k];

  std::vector<Triplet> a;
  for (; next_line < body.size(); ++next_line) {
    std::istringstream h(clean(body[next_line]));
    std::size_t mat, i, j;
    int block;
    double v;
    if (!(h >> mat >> block >> i >> j >> v)) throw InputError("sdpa: bad entry line '" + body[next_line] + "'");
    if (mat > m) throw InputError("sdpa: matrix number out of range");
    std::size_t row;
    double coeff;
    if (block == lp_block) {
      if (i != j || i < 1 || i > lp) throw InputError("sdpa: bad diagonal entry");
      const std::size_t pos = i - 1;
      if (pos < 2 * p.cones.zero) {
        if (pos % 2 == 1) continue;  // mirrored copy of a zero-cone row
        row = pos / 2;
      } else {
        row = p.cones.zero + (pos - 2 * p.cones.zero);
      }
      coeff = -v;
    } else if (psd_row0.count(block) != 0) {
      const std::size_t n = psd_side_of[block];
      std::size_t r = i - 1;
      std::size_t c = j - 1;
      if (r >= n || c >= n) throw InputError("sdpa: entry outside its block");
      if (r > c) std::swap(r, c);  // (r, c) upper -> lower index (c, r)
      row = psd_row0[block] + svec_index(c, r, n);
      coeff = r == c ? -v : -rescale_offdiagonal(v);
    } else {
      throw InputError("sdpa: unknown block number");
    }
    if (mat == 0) {
      p.b[row] = coeff;
    } else {
      a.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(mat - 1), coeff});
    }
  }
  canonicalize_triplets(a);
  p.a = std::move(a);
  p.validate();
  return p;
}

}  // namespace sosgap
