#pragma once

namespace bergman {

/// log(n!) through a cached lgamma table; thread-safe reads after first use.
double log_factorial(int n);

/// Falling factorial n (n-1) ... (n-k+1) as an exact double product
/// (k is small everywhere it is used). Returns 1 for k = 0, 0 for k > n.
double falling_factorial(int n, int k);

}  // namespace bergman
