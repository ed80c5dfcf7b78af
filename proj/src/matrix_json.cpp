#include "entlab/matrix_json.hpp"

namespace entlab {

Json matrix_to_json(const DenseMatrix& m) {
  const int n = m.n();
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < n; ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (int j = 0; j < n; ++j) {
      re_row.push_back(m.entries()(i, j).real());
      im_row.push_back(m.entries()(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  Json out;
  out["n"] = n;
  out["field"] = m.field() == Field::Real ? "real" : "complex";
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

DenseMatrix matrix_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("field") &&
              j.contains("re") && j.contains("im"),
          ErrorCode::IoFailure, "matrix JSON needs n, field, re, im");
  const int n = j.at("n").get<int>();
  require(n >= 1, ErrorCode::IoFailure, "matrix JSON has n < 1");
  const std::string field_str = j.at("field").get<std::string>();
  Field field;
  if (field_str == "real") {
    field = Field::Real;
  } else if (field_str == "complex") {
    field = Field::Complex;
  } else {
    fail(ErrorCode::IoFailure, "matrix JSON field must be real or complex");
  }
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  require(re.is_array() && im.is_array() &&
              static_cast<int>(re.size()) == n &&
              static_cast<int>(im.size()) == n,
          ErrorCode::IoFailure, "matrix JSON re/im must be n x n arrays");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& re_row = re.at(i);
    const Json& im_row = im.at(i);
    require(re_row.is_array() && im_row.is_array() &&
                static_cast<int>(re_row.size()) == n &&
                static_cast<int>(im_row.size()) == n,
            ErrorCode::IoFailure, "matrix JSON re/im must be n x n arrays");
    for (int k = 0; k < n; ++k)
      m(i, k) = Complex(re_row.at(k).get<double>(), im_row.at(k).get<double>());
  }
  return DenseMatrix(std::move(m), field);
}

}  // namespace entlab
