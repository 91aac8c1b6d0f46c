#pragma once

#include "cosparse/types.hpp"

namespace cosparse::fft {

// Unnormalized length-n DFTs backed by FFTW. Plans are created once per
// (length, direction) under a lock and executed lock-free, so these are safe
// to call from several threads.

/// out[k] = sum_t in[t] e^{-2 pi i k t / n}
void forward(const Complex* in, Complex* out, Index n);
/// out[t] = sum_k in[k] e^{+2 pi i k t / n}
void backward(const Complex* in, Complex* out, Index n);

inline CVector forward(const CVector& in) {
  CVector out(in.size());
  forward(in.data(), out.data(), in.size());
  return out;
}

inline CVector backward(const CVector& in) {
  CVector out(in.size());
  backward(in.data(), out.data(), in.size());
  return out;
}

}  // namespace cosparse::fft
