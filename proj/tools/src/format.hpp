#pragma once

#include <string>
#include <vector>

#include "ctc/frame.hpp"

namespace ctc::cli {

// Short human form: 12 significant digits, no negative zero.
std::string num(double v);
std::string num(Complex v);
std::string vec(const Vec& v);
std::string cvec(const CRow& v);
std::string matrix(const Mat& M);

void write_file(const std::string& path, const std::string& text);

}  // namespace ctc::cli
