#pragma once

// Grammar corpus for round-trip and derivative tests. Every expression is
// analytic on the evaluation box below (it keeps clear of 0, all poles,
// and the negative-real branch cuts of log and sqrt).

namespace testsupport {

inline constexpr const char* kCorpus[] = {
    "z",
    "i",
    "1",
    "-z",
    "1 - z^2",
    "i*exp(-z)",
    "2*3*z",
    "z + 0",
    "z^2 - 1",
    "exp(z)",
    "exp(-z)",
    "sin(z)",
    "cos(z)",
    "sinh(z)",
    "cosh(z)",
    "sqrt(z)",
    "log(z)",
    "1/z",
    "(1 + 2*i)*z^2",
    "z^3/3 - z",
    "i*(z^2 + 1)",
    "2*z",
    "exp(z)*sin(z)",
    "cos(z)^2 + sin(z)^2",
    "z^-2",
    "(z + 1)/(z + 2)",
    "sqrt(z + 1)",
    "log(z + 2)",
    "-(-z)",
    "0.5*z + 1.25",
    "1.5e-1*z",
    "z^0",
    "((z))",
    "sinh(z)*cosh(z) - sinh(z)",
    "exp(log(z))",
    "z/2 + z/3",
};

inline constexpr int kCorpusSize = sizeof(kCorpus) / sizeof(kCorpus[0]);

// Evaluation box: Re z in [kBoxReLo, kBoxReHi], Im z in [-kBoxIm, kBoxIm].
inline constexpr double kBoxReLo = 0.4;
inline constexpr double kBoxReHi = 1.6;
inline constexpr double kBoxIm = 1.0;

}  // namespace testsupport
