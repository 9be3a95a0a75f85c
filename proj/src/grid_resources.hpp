#pragma once

#include <fftw3.h>

#include <vector>

#include "stratlab/fd_weights.hpp"

namespace stratlab::detail {

struct GridResources {
  GridResources(std::size_t n1, std::size_t n2, int fd_order);
  ~GridResources();
  GridResources(const GridResources&) = delete;
  GridResources& operator=(const GridResources&) = delete;

  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<double> weights;  // vertical trapezoid weights
  VerticalOperator first;
  VerticalOperator second;
  fftw_plan forward = nullptr;   // n2 strided r2c transforms of length n1
  fftw_plan backward = nullptr;  // matching c2r transforms
};

}  // namespace stratlab::detail
