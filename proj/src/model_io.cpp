#include "ocen/model_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "ocen/classifiers.hpp"
#include "ocen/combiners.hpp"
#include "ocen/version.hpp"

namespace ocen::model_io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str()) {
    throw std::runtime_error("model text: bad number '" + s + "'");
  }
  return v;
}

void write_scalar(std::ostream& os, const std::string& key, const std::string& value) {
  os << key << ' ' << value << '\n';
}
void write_scalar(std::ostream& os, const std::string& key, double value) {
  os << key << ' ' << format_double(value) << '\n';
}
void write_scalar(std::ostream& os, const std::string& key, std::size_t value) {
  os << key << ' ' << value << '\n';
}

void write_vector(std::ostream& os, const std::string& key, const std::vector<double>& v) {
  os << key << ' ' << v.size() << '\n';
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << format_double(v[i]) << (i + 1 == v.size() ? '\n' : ' ');
  }
  if (v.empty()) os << '\n';
}

void write_matrix(std::ostream& os, const std::string& key,
                  const std::vector<std::vector<double>>& m) {
  os << key << ' ' << m.size() << ' ' << (m.empty() ? 0 : m[0].size()) << '\n';
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << format_double(row[j]) << (j + 1 == row.size() ? '\n' : ' ');
    }
  }
}

Reader::Reader(const std::string& text) {
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines_.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines_.push_back(cur);
}

std::string Reader::next_line() {
  while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
  if (pos_ >= lines_.size()) throw std::runtime_error("model text: unexpected end");
  return lines_[pos_++];
}

std::string Reader::peek_key() {
  std::size_t save = pos_;
  while (save < lines_.size() && lines_[save].empty()) ++save;
  if (save >= lines_.size()) return "";
  const std::string& line = lines_[save];
  return line.substr(0, line.find(' '));
}

std::string Reader::take_rest() {
  std::string out;
  while (pos_ < lines_.size()) {
    out += lines_[pos_++];
    out += '\n';
  }
  return out;
}

std::string Reader::expect_scalar(const std::string& key) {
  std::string line = next_line();
  if (line.substr(0, key.size()) != key ||
      (line.size() > key.size() && line[key.size()] != ' ')) {
    throw std::runtime_error("model text: expected key '" + key + "', got '" + line + "'");
  }
  return line.size() > key.size() ? line.substr(key.size() + 1) : "";
}

double Reader::expect_double(const std::string& key) {
  return parse_double(expect_scalar(key));
}

std::size_t Reader::expect_size(const std::string& key) {
  const double v = parse_double(expect_scalar(key));
  return static_cast<std::size_t>(v);
}

std::vector<double> Reader::expect_vector(const std::string& key) {
  const std::size_t n = expect_size(key);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    std::istringstream iss(next_line());
    std::string tok;
    while (iss >> tok) out.push_back(parse_double(tok));
  }
  if (out.size() != n) throw std::runtime_error("model text: vector '" + key + "' overrun");
  return out;
}

std::vector<std::vector<double>> Reader::expect_matrix(const std::string& key) {
  std::istringstream head(expect_scalar(key));
  std::size_t rows = 0, cols = 0;
  if (!(head >> rows >> cols)) {
    throw std::runtime_error("model text: bad matrix header for '" + key + "'");
  }
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    std::istringstream iss(next_line());
    std::string tok;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!(iss >> tok)) throw std::runtime_error("model text: short matrix row");
      out[i][j] = parse_double(tok);
    }
  }
  return out;
}

}  // namespace ocen::model_io

namespace ocen {

using model_io::Reader;

std::string TrainedClassifier::to_text() const {
  std::ostringstream os;
  model_io::write_scalar(os, "ocen_model", std::string(model_format_version));
  model_io::write_scalar(os, "algorithm", algo_name(algo_));
  model_io::write_scalar(os, "name", name_);
  model_io::write_scalar(os, "theta", theta_);
  model_io::write_scalar(os, "convergence_warning",
                         std::string(convergence_warning_ ? "1" : "0"));
  if (const auto* pga = std::get_if<detail::PgaState>(&state_)) {
    model_io::write_scalar(os, "k_nn", static_cast<std::size_t>(pga->k_nn));
    model_io::write_matrix(os, "points", pga->points);
    model_io::write_vector(os, "sorted_d", pga->sorted_d);
  } else if (const auto* gde = std::get_if<detail::GdeState>(&state_)) {
    model_io::write_scalar(os, "r", gde->r);
    model_io::write_scalar(os, "mean_count", gde->mean_count);
    model_io::write_scalar(os, "sd_count", gde->sd_count);
    model_io::write_matrix(os, "points", gde->points);
  } else if (const auto* den = std::get_if<detail::DensityState>(&state_)) {
    model_io::write_scalar(os, "psi",
                           std::string(den->psi == PsiMean::harmonic ? "harmonic"
                                                                     : "geometric"));
    model_io::write_scalar(os, "s", den->s);
    model_io::write_scalar(os, "bins", den->bins);
    model_io::write_scalar(os, "max_raw", den->max_raw);
    model_io::write_matrix(os, "bin_mass", den->bin_mass);
  } else {
    const auto& svm = std::get<detail::SvmState>(state_);
    model_io::write_scalar(os, "kernel",
                           std::string(svm.kernel == KernelKind::linear ? "linear"
                                                                        : "polynomial"));
    model_io::write_scalar(os, "degree", static_cast<std::size_t>(svm.degree));
    model_io::write_scalar(os, "nu", svm.nu);
    model_io::write_scalar(os, "rho", svm.rho);
    model_io::write_scalar(os, "sigma_g", svm.sigma_g);
    model_io::write_matrix(os, "support", svm.support);
    model_io::write_vector(os, "alpha", svm.alpha);
  }
  os << "end\n";
  return os.str();
}

namespace {

TrainedClassifier read_classifier(Reader& r) {
  const std::string version = r.expect_scalar("ocen_model");
  if (version != model_format_version) {
    throw std::runtime_error("unsupported model format version '" + version + "'");
  }
  const Algo algo = algo_from_name(r.expect_scalar("algorithm"));
  const std::string name = r.expect_scalar("name");
  const double theta = r.expect_double("theta");
  const bool warn = r.expect_scalar("convergence_warning") == "1";
  detail::State state;
  switch (algo) {
    case Algo::pga: {
      detail::PgaState st;
      st.k_nn = static_cast<int>(r.expect_size("k_nn"));
      st.points = r.expect_matrix("points");
      st.sorted_d = r.expect_vector("sorted_d");
      state = std::move(st);
      break;
    }
    case Algo::gde: {
      detail::GdeState st;
      st.r = r.expect_double("r");
      st.mean_count = r.expect_double("mean_count");
      st.sd_count = r.expect_double("sd_count");
      st.points = r.expect_matrix("points");
      state = std::move(st);
      break;
    }
    case Algo::density_agg: {
      detail::DensityState st;
      st.psi = r.expect_scalar("psi") == "harmonic" ? PsiMean::harmonic
                                                    : PsiMean::geometric;
      st.s = r.expect_double("s");
      st.bins = r.expect_size("bins");
      st.max_raw = r.expect_double("max_raw");
      st.bin_mass = r.expect_matrix("bin_mass");
      state = std::move(st);
      break;
    }
    case Algo::ocsvm: {
      detail::SvmState st;
      st.kernel = r.expect_scalar("kernel") == "linear" ? KernelKind::linear
                                                        : KernelKind::polynomial;
      st.degree = static_cast<int>(r.expect_size("degree"));
      st.nu = r.expect_double("nu");
      st.rho = r.expect_double("rho");
      st.sigma_g = r.expect_double("sigma_g");
      st.support = r.expect_matrix("support");
      st.alpha = r.expect_vector("alpha");
      state = std::move(st);
      break;
    }
  }
  if (r.expect_scalar("end") != "") throw std::runtime_error("model text: bad trailer");
  return {algo, name, theta, std::move(state), warn};
}

}  // namespace

TrainedClassifier TrainedClassifier::from_text(const std::string& text) {
  Reader r(text);
  return read_classifier(r);
}

std::string TupsoModel::to_text() const {
  std::ostringstream os;
  model_io::write_scalar(os, "ocen_tupso", std::string(model_format_version));
  model_io::write_scalar(os, "metric", metric_name(metric));
  model_io::write_scalar(os, "k_inner", k_inner);
  std::string mask_str;
  for (bool b : feature_mask) mask_str += b ? '1' : '0';
  model_io::write_scalar(os, "feature_mask", mask_str);
  model_io::write_vector(os, "alpha", alpha);
  model_io::write_vector(os, "f_t", f_t);
  model_io::write_vector(os, "scaler_lo", scaler_lo);
  model_io::write_vector(os, "scaler_hi", scaler_hi);
  model_io::write_scalar(os, "members", members.size());
  for (const auto& m : members) os << m.to_text();
  os << "meta_model\n" << meta.to_text();
  os << "end_tupso\n";
  return os.str();
}

TupsoModel TupsoModel::from_text(const std::string& text) {
  Reader r(text);
  TupsoModel model;
  const std::string version = r.expect_scalar("ocen_tupso");
  if (version != model_format_version) {
    throw std::runtime_error("unsupported ensemble format version '" + version + "'");
  }
  model.metric = metric_from_name(r.expect_scalar("metric"));
  model.k_inner = r.expect_size("k_inner");
  const std::string mask_str = r.expect_scalar("feature_mask");
  if (mask_str.size() != 8) throw std::runtime_error("bad feature mask");
  for (std::size_t i = 0; i < 8; ++i) model.feature_mask[i] = mask_str[i] == '1';
  model.alpha = r.expect_vector("alpha");
  model.f_t = r.expect_vector("f_t");
  model.scaler_lo = r.expect_vector("scaler_lo");
  model.scaler_hi = r.expect_vector("scaler_hi");
  const std::size_t n_members = r.expect_size("members");
  for (std::size_t i = 0; i < n_members; ++i) model.members.push_back(read_classifier(r));
  if (r.expect_scalar("meta_model") != "") throw std::runtime_error("bad meta header");
  model.meta = read_classifier(r);
  if (r.expect_scalar("end_tupso") != "") throw std::runtime_error("bad trailer");
  for (const auto& m : model.members) {
    ClassifierSpec spec;
    spec.algo = m.algo();
    spec.name = m.name();
    model.specs.push_back(spec);
  }
  return model;
}

}  // namespace ocen
