#include "magictrap/atomdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace magictrap {
namespace {

constexpr int kSchema = 1;
constexpr std::string_view kOrbitalLetters = "SPDFGH";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Locale-independent decimal parsing.
double parse_number(std::string_view text, const std::string& where) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw DatasetError(where + ": malformed number '" + std::string(text) + "'");
  }
  return v;
}

int parse_orbital(std::string_view text, const std::string& where) {
  if (text.size() == 1) {
    const auto pos = kOrbitalLetters.find(static_cast<char>(std::toupper(text[0])));
    if (pos != std::string_view::npos) return static_cast<int>(pos);
  }
  const double v = parse_number(text, where);
  if (v < 0 || v != std::floor(v)) throw DatasetError(where + ": bad orbital quantum number");
  return static_cast<int>(v);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::pair<int, std::vector<std::string>>> rows;  // (line number, fields)
};

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("missing file " + path.string());
  Table t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const auto eq = s.find("schema=");
      if (eq != std::string::npos) {
        const std::string v = trim(std::string_view(s).substr(eq + 7));
        if (v != std::to_string(kSchema)) {
          throw DatasetError(path.string() + ":" + std::to_string(lineno) + ": schema version " + v +
                             " not supported");
        }
      }
      continue;
    }
    auto fields = split_ws(s);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw DatasetError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(t.header.size()) + " fields, found " +
                         std::to_string(fields.size()));
    }
    t.rows.emplace_back(lineno, std::move(fields));
  }
  if (t.header.empty()) throw DatasetError(path.string() + ": no header line");
  return t;
}

std::size_t column(const Table& t, const std::string& name, const std::filesystem::path& path) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) throw DatasetError(path.string() + ": missing column '" + name + "'");
  return static_cast<std::size_t>(it - t.header.begin());
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int parse_doubled(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double num = parse_number(std::string_view(s).substr(0, slash), "quantum number");
    const double den = parse_number(std::string_view(s).substr(slash + 1), "quantum number");
    if (den != 2.0 || num != std::floor(num)) throw DatasetError("quantum number '" + s + "' is not a half-integer");
    return static_cast<int>(num);
  }
  const double v = parse_number(s, "quantum number");
  const double twice = 2.0 * v;
  if (twice != std::floor(twice)) throw DatasetError("quantum number '" + s + "' is not a half-integer");
  return static_cast<int>(twice);
}

std::string format_doubled(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string FineLevel::key() const {
  std::string k = std::to_string(n);
  k += l < static_cast<int>(kOrbitalLetters.size()) ? kOrbitalLetters[static_cast<std::size_t>(l)] : '?';
  k += std::to_string(two_j) + "_2";
  return k;
}

double hyperfine_shift(const FineLevel& level, int two_f, int two_i) {
  const int two_j = level.two_j;
  if (two_f < std::abs(two_j - two_i) || two_f > two_j + two_i || (two_f + two_j + two_i) % 2 != 0) {
    throw DomainError("F = " + format_doubled(two_f) + " out of range for level " + level.key());
  }
  const double f = two_f / 2.0, j = two_j / 2.0, i = two_i / 2.0;
  const double k = f * (f + 1) - i * (i + 1) - j * (j + 1);
  double e = 0.5 * level.a_mhz * k;
  if (two_i > 1 && two_j > 1) {
    e += level.b_mhz * (1.5 * k * (k + 1) - 2.0 * i * (i + 1) * j * (j + 1)) /
         (4.0 * i * (2 * i - 1) * j * (2 * j - 1));
  }
  return e * 1e6;
}

void AtomDataset::finalize() {
  const std::string tag = "dataset '" + species.name + "'";
  if (species.two_i <= 0) throw DatasetError(tag + ": nuclear spin must be positive");
  if (!(species.delta_hpf_hz > 0)) throw DatasetError(tag + ": delta_hpf_hz must be positive");
  if (levels.empty()) throw DatasetError(tag + ": no levels");

  ground_ = -1;
  std::set<std::string> keys;
  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    const FineLevel& lv = levels[idx];
    const std::string k = lv.key();
    if (!keys.insert(k).second) throw DatasetError(tag + ": duplicate level " + k);
    if (std::abs(2 * lv.l - lv.two_j) != 1) throw DatasetError(tag + ": level " + k + " violates |L-J| = 1/2");
    if (lv.energy_cm1 < 0) throw DatasetError(tag + ": level " + k + " has negative energy");
    if ((lv.two_j == 1 || species.two_i == 1) && lv.b_mhz != 0.0) {
      throw DatasetError(tag + ": level " + k + " has a quadrupole constant but J or I is 1/2");
    }
    if (lv.energy_cm1 == 0.0) {
      if (ground_ >= 0) throw DatasetError(tag + ": more than one level at zero energy");
      ground_ = static_cast<int>(idx);
    }
  }
  if (ground_ < 0) throw DatasetError(tag + ": no ground level (energy 0)");
  if (levels[static_cast<std::size_t>(ground_)].two_j != 1) throw DatasetError(tag + ": ground level must have J = 1/2");

  const std::size_t n = levels.size();
  dipole_matrix_.assign(n * n, 0.0);
  for (const ReducedDipole& d : dipoles) {
    if (d.lower < 0 || d.upper < 0 || static_cast<std::size_t>(d.lower) >= n || static_cast<std::size_t>(d.upper) >= n) {
      throw DatasetError(tag + ": dipole endpoint does not resolve to a level");
    }
    const FineLevel& a = levels[static_cast<std::size_t>(d.lower)];
    const FineLevel& b = levels[static_cast<std::size_t>(d.upper)];
    const std::string name = a.key() + "-" + b.key();
    if (!(d.d_ea0 > 0)) throw DatasetError(tag + ": dipole " + name + " must be positive");
    if (std::abs(a.l - b.l) != 1) throw DatasetError(tag + ": dipole " + name + " violates |dL| = 1");
    double& slot = dipole_matrix_[static_cast<std::size_t>(d.lower) * n + static_cast<std::size_t>(d.upper)];
    if (slot != 0.0) throw DatasetError(tag + ": dipole " + name + " listed twice");
    slot = d.d_ea0;
    dipole_matrix_[static_cast<std::size_t>(d.upper) * n + static_cast<std::size_t>(d.lower)] = d.d_ea0;
  }

  if (one_photon_levels.empty()) {
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (static_cast<int>(idx) != ground_ && has_dipole(ground_, static_cast<int>(idx))) {
        one_photon_levels.push_back(static_cast<int>(idx));
      }
    }
  }
  for (int k : one_photon_levels) {
    if (!has_dipole(ground_, k)) throw DatasetError(tag + ": one-photon level " + level(k).key() + " has no dipole to ground");
  }

  const FineLevel& g = levels[static_cast<std::size_t>(ground_)];
  const double split = hyperfine_shift(g, two_f_high(), species.two_i) - hyperfine_shift(g, two_f_low(), species.two_i);
  if (std::abs(split - species.delta_hpf_hz) > 1.0) {
    throw DatasetError(tag + ": delta_hpf_hz disagrees with the ground hyperfine constant (" + fmt17(split) + " Hz)");
  }
}

int AtomDataset::find_level(std::string_view key) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].key() == key) return static_cast<int>(i);
  }
  return -1;
}

int AtomDataset::level_index(std::string_view key) const {
  const int i = find_level(key);
  if (i < 0) throw DomainError("unknown level '" + std::string(key) + "' in dataset " + species.name);
  return i;
}

double AtomDataset::reduced(int a, int b) const {
  const std::size_t n = levels.size();
  if (dipole_matrix_.size() != n * n) return 0.0;
  return dipole_matrix_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
}

std::vector<int> AtomDataset::allowed_two_f(int lvl) const {
  const int two_j = level(lvl).two_j;
  std::vector<int> out;
  for (int f = std::abs(two_j - species.two_i); f <= two_j + species.two_i; f += 2) out.push_back(f);
  return out;
}

double AtomDataset::hyperfine_offset_hz(int lvl, int two_f) const {
  return hyperfine_shift(level(lvl), two_f, species.two_i);
}

double AtomDataset::state_frequency_hz(const HyperfineState& s) const {
  return wavenumber_to_hz(level(s.level).energy_cm1) + hyperfine_offset_hz(s.level, s.two_f);
}

int AtomDataset::two_f_low() const { return species.two_i - 1; }

HyperfineState AtomDataset::ground_state(int two_f, int two_m) const {
  if (two_f != two_f_low() && two_f != two_f_high()) throw DomainError("ground F out of range");
  if (std::abs(two_m) > two_f || (two_m + two_f) % 2 != 0) throw DomainError("ground m_F out of range");
  return {ground_, two_f, two_m};
}

double transition_angular_frequency(const AtomDataset& ds, const HyperfineState& lower,
                                    const HyperfineState& upper) {
  const FineLevel& a = ds.level(lower.level);
  const FineLevel& b = ds.level(upper.level);
  const double coarse = wavenumber_to_hz(b.energy_cm1 - a.energy_cm1);
  const double fine = ds.hyperfine_offset_hz(upper.level, upper.two_f) - ds.hyperfine_offset_hz(lower.level, lower.two_f);
  return phys::kTwoPi * (coarse + fine);
}

AtomDataset load_dataset(const std::filesystem::path& data_dir, std::string_view species) {
  const std::filesystem::path dir = data_dir / std::string(species);
  AtomDataset ds;

  const auto spath = dir / "species.tbl";
  std::ifstream sin(spath);
  if (!sin) throw DatasetError("missing file " + spath.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(sin, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw DatasetError(spath.string() + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(std::string_view(s).substr(0, eq))] = trim(std::string_view(s).substr(eq + 1));
  }
  auto need = [&](const std::string& k) {
    const auto it = kv.find(k);
    if (it == kv.end()) throw DatasetError(spath.string() + ": missing key '" + k + "'");
    return it->second;
  };
  if (need("schema") != std::to_string(kSchema)) throw DatasetError(spath.string() + ": schema version " + kv["schema"] + " not supported");
  ds.species.name = need("name");
  ds.species.two_i = parse_doubled(need("nuclear_spin"));
  ds.species.delta_hpf_hz = parse_number(need("delta_hpf_hz"), spath.string());
  ds.species.g_i = parse_number(need("g_i"), spath.string());
  ds.species.mass_kg = parse_number(need("mass_kg"), spath.string());
  if (auto it = kv.find("reference_values"); it != kv.end()) {
    std::string item;
    std::istringstream in(it->second);
    while (std::getline(in, item, ',')) ds.species.reference_values.push_back(trim(item));
  }

  const auto lpath = dir / "levels.tbl";
  const Table lt = read_table(lpath);
  const std::size_t cn = column(lt, "n", lpath), cl = column(lt, "L", lpath), cj = column(lt, "J", lpath);
  const std::size_t ce = column(lt, "energy_cm1", lpath), ca = column(lt, "A_mhz", lpath), cb = column(lt, "B_mhz", lpath);
  for (const auto& [ln, f] : lt.rows) {
    const std::string where = lpath.string() + ":" + std::to_string(ln);
    FineLevel lv;
    const double n = parse_number(f[cn], where);
    if (n < 1 || n != std::floor(n)) throw DatasetError(where + ": bad principal quantum number");
    lv.n = static_cast<int>(n);
    lv.l = parse_orbital(f[cl], where);
    try {
      lv.two_j = parse_doubled(f[cj]);
    } catch (const DatasetError& e) {
      throw DatasetError(where + ": " + e.what());
    }
    lv.energy_cm1 = parse_number(f[ce], where);
    lv.a_mhz = parse_number(f[ca], where);
    lv.b_mhz = parse_number(f[cb], where);
    ds.levels.push_back(lv);
  }

  const auto dpath = dir / "dipoles.tbl";
  const Table dt = read_table(dpath);
  const std::size_t clo = column(dt, "lower", dpath), cup = column(dt, "upper", dpath);
  const std::size_t cd = column(dt, "d_ea0", dpath), cs = column(dt, "source", dpath);
  for (const auto& [ln, f] : dt.rows) {
    const std::string where = dpath.string() + ":" + std::to_string(ln);
    ReducedDipole d;
    d.lower = ds.find_level(f[clo]);
    d.upper = ds.find_level(f[cup]);
    if (d.lower < 0 || d.upper < 0) {
      throw DatasetError(where + ": transition " + f[clo] + "-" + f[cup] + " names a level that is not in levels.tbl");
    }
    d.d_ea0 = parse_number(f[cd], where);
    d.source = f[cs];
    ds.dipoles.push_back(d);
  }

  ds.finalize();
  return ds;
}

void write_dataset(const AtomDataset& ds, const std::filesystem::path& species_dir) {
  std::filesystem::create_directories(species_dir);
  {
    std::ofstream out(species_dir / "species.tbl");
    out << "schema=" << kSchema << "\nname=" << ds.species.name << "\nnuclear_spin=" << format_doubled(ds.species.two_i)
        << "\ndelta_hpf_hz=" << fmt17(ds.species.delta_hpf_hz) << "\ng_i=" << fmt17(ds.species.g_i)
        << "\nmass_kg=" << fmt17(ds.species.mass_kg) << "\n";
    if (!ds.species.reference_values.empty()) {
      out << "reference_values=";
      for (std::size_t i = 0; i < ds.species.reference_values.size(); ++i) {
        out << (i ? "," : "") << ds.species.reference_values[i];
      }
      out << "\n";
    }
  }
  {
    std::ofstream out(species_dir / "levels.tbl");
    out << "# schema=" << kSchema << "\nn L J energy_cm1 A_mhz B_mhz\n";
    for (const FineLevel& lv : ds.levels) {
      out << lv.n << ' ' << kOrbitalLetters[static_cast<std::size_t>(lv.l)] << ' ' << format_doubled(lv.two_j) << ' '
          << fmt17(lv.energy_cm1) << ' ' << fmt17(lv.a_mhz) << ' ' << fmt17(lv.b_mhz) << "\n";
    }
  }
  {
    std::ofstream out(species_dir / "dipoles.tbl");
    out << "# schema=" << kSchema << "\nlower upper d_ea0 source\n";
    for (const ReducedDipole& d : ds.dipoles) {
      out << ds.level(d.lower).key() << ' ' << ds.level(d.upper).key() << ' ' << fmt17(d.d_ea0) << ' ' << d.source << "\n";
    }
  }
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("MAGICTRAP_DATA"); env && *env) return env;
  return MAGICTRAP_DEFAULT_DATA_DIR;
}

}  // namespace magictrap
