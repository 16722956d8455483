#include "angdil/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "angdil/errors.hpp"

namespace angdil {

namespace {

constexpr double kModulusSlack = 1e-9;
constexpr double kThetaTolerance = 1e-12;

bool is_finite(complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

double parse_field(std::string_view text, std::size_t line, const char* name) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError(std::string("cannot parse ") + name + " field '" + std::string(text) + "'",
                     line);
  return value;
}

std::string fmt17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

// ------------------------------------------------------------ SampledMapping

SampledMapping::SampledMapping(std::vector<double> r_values, int theta_count,
                               std::vector<complex> samples, AssertedFlags flags)
    : r_values_(std::move(r_values)),
      theta_count_(theta_count),
      samples_(std::move(samples)),
      flags_(flags) {
  if (r_values_.size() < 3) throw StructureError("sampled grid needs at least 3 radii");
  if (theta_count_ < 16) throw StructureError("sampled grid needs theta_count >= 16");
  for (std::size_t i = 0; i < r_values_.size(); ++i) {
    const double r = r_values_[i];
    if (!(r > 0.0 && r <= 1.0))
      throw StructureError("sampled radius " + fmt17(r) + " outside (0, 1]");
    if (i > 0 && !(r > r_values_[i - 1]))
      throw StructureError("sampled radii must be strictly increasing (at index " +
                           std::to_string(i) + ")");
  }
  const std::size_t nr = r_values_.size();
  const std::size_t nt = static_cast<std::size_t>(theta_count_);
  if (samples_.size() != nr * nt)
    throw StructureError("expected " + std::to_string(nr * nt) + " samples, got " +
                         std::to_string(samples_.size()));
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (!is_finite(samples_[k]))
      throw DomainError("non-finite sample at r index " + std::to_string(k / nt) +
                        ", theta index " + std::to_string(k % nt));
    if (std::abs(samples_[k]) > 1.0 + kModulusSlack)
      throw DomainError("sample modulus " + fmt17(std::abs(samples_[k])) +
                        " exceeds 1 at r index " + std::to_string(k / nt) + ", theta index " +
                        std::to_string(k % nt));
  }

  d_r_.resize(samples_.size());
  d_theta_.resize(samples_.size());
  const double dtheta = kTwoPi / theta_count_;
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const complex fm2 = sample(i, (j + nt - 2) % nt);
      const complex fm1 = sample(i, (j + nt - 1) % nt);
      const complex fp1 = sample(i, (j + 1) % nt);
      const complex fp2 = sample(i, (j + 2) % nt);
      d_theta_[index(i, j)] = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * dtheta);
    }
  }
  // Three-point weights on a non-uniform grid; one-sided at the ends.
  for (std::size_t i = 0; i < nr; ++i) {
    std::size_t a = 0, b = 0, c = 0;
    double wa = 0.0, wb = 0.0, wc = 0.0;
    if (i == 0) {
      a = 0, b = 1, c = 2;
      const double h1 = r_values_[1] - r_values_[0], h2 = r_values_[2] - r_values_[1];
      wa = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
      wb = (h1 + h2) / (h1 * h2);
      wc = -h1 / (h2 * (h1 + h2));
    } else if (i + 1 == nr) {
      a = nr - 3, b = nr - 2, c = nr - 1;
      const double h1 = r_values_[b] - r_values_[a], h2 = r_values_[c] - r_values_[b];
      wa = h2 / (h1 * (h1 + h2));
      wb = -(h1 + h2) / (h1 * h2);
      wc = (2.0 * h2 + h1) / (h2 * (h1 + h2));
    } else {
      a = i - 1, b = i, c = i + 1;
      const double h1 = r_values_[b] - r_values_[a], h2 = r_values_[c] - r_values_[b];
      wa = -h2 / (h1 * (h1 + h2));
      wb = (h2 - h1) / (h1 * h2);
      wc = h1 / (h2 * (h1 + h2));
    }
    for (std::size_t j = 0; j < nt; ++j)
      d_r_[index(i, j)] = wa * sample(a, j) + wb * sample(b, j) + wc * sample(c, j);
  }
}

SampledMapping::Cell SampledMapping::locate(PolarPoint point) const {
  const double r = point.r();
  constexpr double slack = 1e-14;
  if (r < r_values_.front() - slack || r > r_values_.back() + slack) {
    throw OutOfDomainError("radius " + fmt17(r) + " outside sampled hull [" +
                           fmt17(r_values_.front()) + ", " + fmt17(r_values_.back()) + "]");
  }
  Cell cell{};
  const auto it = std::upper_bound(r_values_.begin(), r_values_.end(), r);
  std::size_t hi = static_cast<std::size_t>(it - r_values_.begin());
  hi = std::clamp<std::size_t>(hi, 1, r_values_.size() - 1);
  cell.r0 = hi - 1;
  cell.r1 = hi;
  cell.wr = std::clamp((r - r_values_[cell.r0]) / (r_values_[cell.r1] - r_values_[cell.r0]), 0.0,
                       1.0);

  double x = point.theta() / (kTwoPi / theta_count_);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) x = nearest;
  const double base = std::floor(x);
  const auto nt = static_cast<std::size_t>(theta_count_);
  cell.t0 = static_cast<std::size_t>(base) % nt;
  cell.t1 = (cell.t0 + 1) % nt;
  cell.wt = x - base;
  return cell;
}

namespace {

template <class Get>
complex bilinear(const Get& get, std::size_t r0, std::size_t r1, std::size_t t0, std::size_t t1,
                 double wr, double wt) {
  const complex lo = (1.0 - wt) * get(r0, t0) + wt * get(r0, t1);
  if (wr == 0.0) return lo;
  const complex hi = (1.0 - wt) * get(r1, t0) + wt * get(r1, t1);
  return (1.0 - wr) * lo + wr * hi;
}

}  // namespace

complex SampledMapping::value(PolarPoint point) const {
  const Cell c = locate(point);
  const auto get = [this](std::size_t i, std::size_t j) { return samples_[index(i, j)]; };
  return bilinear(get, c.r0, c.r1, c.t0, c.t1, c.wr, c.wt);
}

PolarJet SampledMapping::jet(PolarPoint point) const {
  const Cell c = locate(point);
  const auto val = [this](std::size_t i, std::size_t j) { return samples_[index(i, j)]; };
  const auto dr = [this](std::size_t i, std::size_t j) { return d_r_[index(i, j)]; };
  const auto dt = [this](std::size_t i, std::size_t j) { return d_theta_[index(i, j)]; };
  return {bilinear(val, c.r0, c.r1, c.t0, c.t1, c.wr, c.wt),
          bilinear(dr, c.r0, c.r1, c.t0, c.t1, c.wr, c.wt),
          bilinear(dt, c.r0, c.r1, c.t0, c.t1, c.wr, c.wt)};
}

complex SampledMapping::origin_estimate() const {
  complex sum = 0.0;
  for (int j = 0; j < theta_count_; ++j) sum += sample(0, static_cast<std::size_t>(j));
  return sum / static_cast<double>(theta_count_);
}

// ------------------------------------------------------------------- parsing

SampledMapping parse_sampled_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty file, expected header r,theta,re,im", 1);
  ++line_no;
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,theta,re,im")
    throw ParseError("header must be exactly 'r,theta,re,im', got '" + line + "'", 1);

  struct Row {
    double theta;
    complex value;
    std::size_t line;
  };
  std::map<double, std::vector<Row>> by_radius;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string_view rest(line);
    std::string_view fields[4];
    for (int k = 0; k < 4; ++k) {
      const auto comma = rest.find(',');
      if (k < 3) {
        if (comma == std::string_view::npos)
          throw ParseError("expected 4 comma-separated fields", line_no);
        fields[k] = rest.substr(0, comma);
        rest.remove_prefix(comma + 1);
      } else {
        if (comma != std::string_view::npos)
          throw ParseError("expected 4 comma-separated fields", line_no);
        fields[k] = rest;
      }
    }
    const double r = parse_field(fields[0], line_no, "r");
    const double theta = parse_field(fields[1], line_no, "theta");
    const double re = parse_field(fields[2], line_no, "re");
    const double im = parse_field(fields[3], line_no, "im");
    if (!std::isfinite(r) || !std::isfinite(theta))
      throw ParseError("non-finite grid coordinate", line_no);
    by_radius[r].push_back({theta, {re, im}, line_no});
    ++rows;
  }
  if (rows == 0) throw StructureError("no sample rows");

  const std::size_t nr = by_radius.size();
  if (rows % nr != 0)
    throw StructureError(std::to_string(rows) + " rows do not form a tensor grid over " +
                         std::to_string(nr) + " radii");
  const std::size_t nt = rows / nr;
  std::vector<double> radii;
  std::vector<complex> samples(rows);
  std::vector<bool> seen(rows, false);
  radii.reserve(nr);
  std::size_t ri = 0;
  for (const auto& [r, ring] : by_radius) {
    if (ring.size() != nt)
      throw StructureError("radius " + fmt17(r) + " has " + std::to_string(ring.size()) +
                           " rows, expected " + std::to_string(nt));
    radii.push_back(r);
    for (const Row& row : ring) {
      const double pos = row.theta * static_cast<double>(nt) / kTwoPi;
      const long long j = std::llround(pos);
      if (j < 0 || j >= static_cast<long long>(nt) ||
          std::abs(row.theta - kTwoPi * static_cast<double>(j) / static_cast<double>(nt)) >
              kThetaTolerance) {
        throw StructureError("line " + std::to_string(row.line) + ": theta " +
                             fmt17(row.theta) + " is not a node 2*pi*j/" + std::to_string(nt));
      }
      const std::size_t k = ri * nt + static_cast<std::size_t>(j);
      if (seen[k])
        throw StructureError("line " + std::to_string(row.line) + ": duplicate grid node");
      seen[k] = true;
      samples[k] = row.value;
    }
    ++ri;
  }
  return SampledMapping(std::move(radii), static_cast<int>(nt), std::move(samples));
}

SampledMapping parse_sampled_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  try {
    auto radii = doc.at("r_values").get<std::vector<double>>();
    const int nt = doc.at("theta_count").get<int>();
    const auto& raw = doc.at("samples");
    if (!raw.is_array()) throw ParseError("samples must be an array", 0);
    std::vector<complex> samples;
    samples.reserve(raw.size());
    for (const auto& pair : raw) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("each sample must be a [re, im] pair", 0);
      samples.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    AssertedFlags flags;
    if (doc.contains("asserted_flags")) {
      const auto& f = doc.at("asserted_flags");
      flags.regular = f.value("regular", false);
      flags.n_property = f.value("n_property", false);
    }
    return SampledMapping(std::move(radii), nt, std::move(samples), flags);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sampled-map JSON: ") + e.what(), 0);
  }
}

SampledMapping parse_sampled_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  if (path.extension() == ".json") return parse_sampled_json(in);
  return parse_sampled_csv(in);
}

// ------------------------------------------------------------------- writing

void write_sampled_csv(const Mapping& map, std::span<const double> r_values, int theta_count,
                       std::ostream& out) {
  out << "r,theta,re,im\n";
  for (double r : r_values) {
    for (int j = 0; j < theta_count; ++j) {
      const double theta = kTwoPi * j / theta_count;
      const complex w = evaluate(map, PolarPoint(r, theta));
      out << fmt17(r) << ',' << fmt17(theta) << ',' << fmt17(w.real()) << ','
          << fmt17(w.imag()) << '\n';
    }
  }
}

void write_sampled_json(const Mapping& map, std::span<const double> r_values, int theta_count,
                        const AssertedFlags& flags, std::ostream& out) {
  nlohmann::json samples = nlohmann::json::array();
  for (double r : r_values) {
    for (int j = 0; j < theta_count; ++j) {
      const complex w = evaluate(map, PolarPoint(r, kTwoPi * j / theta_count));
      samples.push_back({w.real(), w.imag()});
    }
  }
  nlohmann::json doc{{"r_values", std::vector<double>(r_values.begin(), r_values.end())},
                     {"theta_count", theta_count},
                     {"samples", std::move(samples)},
                     {"asserted_flags",
                      {{"regular", flags.regular}, {"n_property", flags.n_property}}}};
  out << doc.dump() << '\n';
}

}  // namespace angdil
