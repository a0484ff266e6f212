#include "quatfa/io.hpp"

#include <fstream>
#include <sstream>

#include "quatfa/error.hpp"

namespace quatfa::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Parse, "schema error: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int positive_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) schema(what + " must be a positive integer");
  return static_cast<int>(j.get<long long>());
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t line = 1;
    size_t column = 1;
    const size_t end = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "parse error at line " << line << ", column " << column << ": " << e.what();
    throw Error(ErrorCode::Parse, msg.str());
  }
}

Json load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json to_json(const Quaternion& q) { return Json::array({q.a, q.b, q.c, q.d}); }

Json to_json(const HTensor& t) { return to_json(Matrix(t.coefficients())); }

Json to_json(const HBimodule& m) {
  return Json{{"dim", m.dim()},
              {"left_i", to_json(m.left(Basis::I))},
              {"left_j", to_json(m.left(Basis::J))},
              {"right_i", to_json(m.right(Basis::I))},
              {"right_j", to_json(m.right(Basis::J))}};
}

Json to_json(const HStarAlgebra& a) {
  Json gens = Json::array();
  for (const Matrix& b : a.real_basis()) gens.push_back(to_json(b));
  return Json{{"n", a.n()}, {"generators", std::move(gens)}, {"unital", true}};
}

Json to_json(const RightHModule& m) {
  Json gram = Json::array();
  for (int p = 0; p < m.rank(); ++p) {
    Json row = Json::array();
    for (int q = 0; q < m.rank(); ++q) row.push_back(to_json(m.gram()(p, q)));
    gram.push_back(std::move(row));
  }
  return Json{{"rank", m.rank()}, {"gram", std::move(gram)}};
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) schema(what + " must be a nonempty array of rows");
  const size_t cols = j[0].size();
  Matrix m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema(what + " has ragged rows");
    for (size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) schema(what + " has a non-numeric entry");
      m(static_cast<int>(r), static_cast<int>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

Quaternion quaternion_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) schema(what + " must be [a, b, c, d]");
  for (const Json& x : j)
    if (!x.is_number()) schema(what + " has a non-numeric entry");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

HTensor tensor_from_json(const Json& j) {
  const Matrix m = matrix_from_json(j, "tensor");
  if (m.rows() != 4 || m.cols() != 4) schema("tensor must be 4 x 4");
  return HTensor(Eigen::Matrix4d(m));
}

ModulePtr bimodule_from_json(const Json& j) {
  const int d = positive_int(field(j, "dim"), "dim");
  auto gen = [&](const char* key) {
    Matrix m = matrix_from_json(field(j, key), key);
    if (m.rows() != d || m.cols() != d) schema(std::string(key) + " must be dim x dim");
    return m;
  };
  Matrix li = gen("left_i"), lj = gen("left_j"), ri = gen("right_i"), rj = gen("right_j");
  return share(HBimodule::from_generators(std::move(li), std::move(lj), std::move(ri), std::move(rj), "spec"));
}

HStarAlgebra algebra_from_json(const Json& j) {
  const int n = positive_int(field(j, "n"), "n");
  const Json& gens = field(j, "generators");
  if (!gens.is_array()) schema("generators must be an array");
  std::vector<Matrix> mats;
  for (const Json& g : gens) {
    Matrix m = matrix_from_json(g, "generator");
    if (m.rows() != n || m.cols() != n) schema("generators must be n x n");
    mats.push_back(std::move(m));
  }
  bool unital = true;
  if (j.contains("unital")) {
    if (!j["unital"].is_boolean()) schema("unital must be a boolean");
    unital = j["unital"].get<bool>();
  }
  return HStarAlgebra::make(n, mats, unital, "spec");
}

RightHModule module_from_json(const Json& j) {
  const int n = positive_int(field(j, "rank"), "rank");
  const Json& gram = field(j, "gram");
  if (!gram.is_array() || gram.size() != static_cast<size_t>(n)) schema("gram must have rank rows");
  QMatrix g(n, n);
  for (int p = 0; p < n; ++p) {
    if (!gram[p].is_array() || gram[p].size() != static_cast<size_t>(n)) schema("gram must be rank x rank");
    for (int q = 0; q < n; ++q) g(p, q) = quaternion_from_json(gram[p][q], "gram entry");
  }
  return RightHModule::make(std::move(g));
}

}  // namespace quatfa::io
