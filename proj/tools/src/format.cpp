#include "format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ctc/expr.hpp"

namespace ctc::cli {

std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(Complex v) {
  const double re = std::abs(v.real()) < 1e-15 ? 0.0 : v.real();
  const double im = std::abs(v.imag()) < 1e-15 ? 0.0 : v.imag();
  if (im == 0.0) return num(re);
  if (re == 0.0) return num(im) + "i";
  return num(re) + (im < 0 ? " - " : " + ") + num(std::abs(im)) + "i";
}

std::string vec(const Vec& v) {
  std::string s = "(";
  for (int a = 0; a < v.size(); ++a) s += (a ? ", " : "") + num(v(a));
  return s + ")";
}

std::string cvec(const CRow& v) {
  std::string s = "(";
  for (int a = 0; a < v.size(); ++a) s += (a ? ", " : "") + num(v(a));
  return s + ")";
}

std::string matrix(const Mat& M) {
  std::string s = "[";
  for (int i = 0; i < M.rows(); ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < M.cols(); ++j) s += (j ? ", " : "") + num(M(i, j));
    s += "]";
  }
  return s + "]";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace ctc::cli
