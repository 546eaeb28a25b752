#pragma once

#include <gtest/gtest.h>

#include <cmath>

#include "lpiso/errors.hpp"
#include "lpiso/experiments.hpp"

namespace lpiso::test {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline StepFn chi(double lo, double hi, double c = 1.0) {
  std::vector<double> b{0.0};
  std::vector<double> v;
  if (lo > 0.0) {
    b.push_back(lo);
    v.push_back(0.0);
  }
  v.push_back(c);
  if (hi < 1.0) {
    b.push_back(hi);
    v.push_back(0.0);
  }
  b.push_back(1.0);
  return StepFn::scalar(b, v);
}

inline double unit_height(double len, double p) { return std::pow(1.0 / len, 1.0 / p); }

}  // namespace lpiso::test

#define EXPECT_ERRC(stmt, errc)                                  \
  do {                                                           \
    try {                                                        \
      stmt;                                                      \
      ADD_FAILURE() << "expected " << ::lpiso::to_string(errc);  \
    } catch (const ::lpiso::Error& e) {                          \
      EXPECT_EQ(e.code(), errc) << e.what();                     \
    }                                                            \
  } while (0)
