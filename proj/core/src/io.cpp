#include "nclass/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nclass::io {

using nlohmann::json;

namespace {

std::string dump(const json& j, int indent) {
  return indent >= 0 ? j.dump(indent) : j.dump();
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("invalid JSON input");
  return j;
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix2_json(const Eigen::Matrix2d& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

}  // namespace

std::string to_json(const CovarianceMatrix& sigma, int indent) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(sigma(i, j));
    rows.push_back(row);
  }
  return dump(json{{"sigma", rows}}, indent);
}

CovarianceMatrix covariance_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("sigma")) throw std::runtime_error("missing \"sigma\" key");
  const json& rows = j.at("sigma");
  if (!rows.is_array() || rows.size() != 4)
    throw std::runtime_error("\"sigma\" must be a 4x4 array");
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || row.size() != 4)
      throw std::runtime_error("\"sigma\" must be a 4x4 array");
    for (int k = 0; k < 4; ++k) m(i, k) = row.at(k).get<double>();
  }
  return CovarianceMatrix(m);
}

std::string to_json(const StandardMoments& m, int indent) {
  return dump(json{{"m1", m.m1}, {"m2", m.m2}, {"n1", m.n1},
                   {"n2", m.n2}, {"c1", m.c1}, {"c2", m.c2}},
              indent);
}

StandardMoments moments_from_json(const std::string& text) {
  const json j = parse(text);
  StandardMoments m;
  m.m1 = j.at("m1").get<double>();
  m.m2 = j.at("m2").get<double>();
  m.n1 = j.at("n1").get<double>();
  m.n2 = j.at("n2").get<double>();
  m.c1 = j.at("c1").get<double>();
  m.c2 = j.at("c2").get<double>();
  require_valid(m);
  return m;
}

CovarianceMatrix state_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("sigma")) return covariance_from_json(text);
  if (j.contains("m1")) return to_covariance(moments_from_json(text));
  throw std::runtime_error("state JSON must contain either \"sigma\" or moment keys");
}

Eigen::Matrix4d raw_state_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("sigma")) {
    const json& rows = j.at("sigma");
    if (!rows.is_array() || rows.size() != 4)
      throw std::runtime_error("\"sigma\" must be a 4x4 array");
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
      const json& row = rows.at(i);
      if (!row.is_array() || row.size() != 4)
        throw std::runtime_error("\"sigma\" must be a 4x4 array");
      for (int k = 0; k < 4; ++k) m(i, k) = row.at(k).get<double>();
    }
    return m;
  }
  if (j.contains("m1")) {
    StandardMoments m;
    m.m1 = j.at("m1").get<double>();
    m.m2 = j.at("m2").get<double>();
    m.n1 = j.at("n1").get<double>();
    m.n2 = j.at("n2").get<double>();
    m.c1 = j.at("c1").get<double>();
    m.c2 = j.at("c2").get<double>();
    Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
    sigma(0, 0) = m.m1;
    sigma(1, 1) = m.m2;
    sigma(2, 2) = m.n1;
    sigma(3, 3) = m.n2;
    sigma(0, 2) = sigma(2, 0) = m.c1;
    sigma(1, 3) = sigma(3, 1) = m.c2;
    return sigma;
  }
  throw std::runtime_error("state JSON must contain either \"sigma\" or moment keys");
}

std::string to_json(const measures::MeasureReport& report, int indent) {
  return dump(json{{"ln_raw", report.ln_raw},
                   {"ln", report.ln},
                   {"depth", report.depth},
                   {"p_positive", report.p_positive},
                   {"duan_zeta", report.duan.zeta},
                   {"duan_lhs", report.duan.lhs},
                   {"duan_violation", report.duan.violation},
                   {"simon_separable", report.simon_separable}},
              indent);
}

std::string to_json(const ValidationReport& report, int indent) {
  return dump(json{{"symmetric", report.symmetric},
                   {"max_asymmetry", report.max_asymmetry},
                   {"positive_definite", report.positive_definite},
                   {"physical", report.physical},
                   {"symplectic_eigenvalues", json::array({report.nu[0], report.nu[1]})}},
              indent);
}

std::string to_json(const canonical::CanonicalResult& result, int indent) {
  return dump(json{{"moments", json::parse(to_json(result.moments, -1))},
                   {"transform",
                    json{{"s_a", matrix2_json(result.transform.block_a())},
                         {"s_b", matrix2_json(result.transform.block_b())}}},
                   {"residual_balance", result.residual_balance},
                   {"residual_match", result.residual_match},
                   {"converged", result.converged},
                   {"iterations", result.iterations}},
              indent);
}

std::string to_json(const mc::RelationReport& report, int indent) {
  json bins = json::array();
  for (const mc::BinStat& bin : report.bins) {
    bins.push_back(json{{"index", bin.index},
                        {"depth_lo", static_cast<double>(bin.index) * report.bin_width},
                        {"count", bin.count},
                        {"ln_min", bin.ln_min},
                        {"ln_max", bin.ln_max},
                        {"spread", bin.spread}});
  }
  return dump(json{{"bin_width", report.bin_width},
                   {"n_records", report.n_records},
                   {"n_converged", report.n_converged},
                   {"max_spread", report.max_spread},
                   {"bins", bins}},
              indent);
}

std::string to_csv(const pfunc::FieldSlice& slice) {
  std::string out = "alpha_ar,alpha_br,P\n";
  const std::size_t nb = slice.b_coords.size();
  for (std::size_t i = 0; i < slice.a_coords.size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      out += format_sig9(slice.a_coords[i]);
      out += ',';
      out += format_sig9(slice.b_coords[j]);
      out += ',';
      out += format_sig9(slice.values[i * nb + j]);
      out += '\n';
    }
  }
  return out;
}

std::string slice_summary_json(const pfunc::FieldSlice& slice, int indent) {
  return dump(json{{"min", slice.min_value},
                   {"argmin", json{{"alpha_ar", slice.min_a}, {"alpha_br", slice.min_b}}},
                   {"grid", json{{"points_a", slice.a_coords.size()},
                                 {"points_b", slice.b_coords.size()},
                                 {"a_lo", slice.a_coords.front()},
                                 {"a_hi", slice.a_coords.back()},
                                 {"b_lo", slice.b_coords.front()},
                                 {"b_hi", slice.b_coords.back()}}}},
              indent);
}

std::string to_csv(const std::vector<mc::StudyRecord>& records) {
  std::string out = "state_id,depth,ln,converged\n";
  for (const mc::StudyRecord& rec : records) {
    out += std::to_string(rec.state_id);
    out += ',';
    out += format_exact(rec.depth);
    out += ',';
    out += format_exact(rec.ln);
    out += ',';
    out += rec.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw std::runtime_error("read failure: " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out.good()) throw std::runtime_error("write failure: " + path);
}

}  // namespace nclass::io
