#pragma once

#include <complex>
#include <vector>

#include "spinor/classify.hpp"

namespace spinor {

// pi|_P as a multiplicity-free list of M'-types tau (rank n'-1), sorted.
struct BranchTable {
  RepLabel rep;
  std::vector<Weight> components;
};

BranchTable branch_principal(const Weight& mu, const Group& g, std::complex<double> nu = {0.0, 0.0});
BranchTable branch_pi_j(const InflChar& gamma, int j);
BranchTable branch_discrete(const InflChar& gamma, Sign sign);
BranchTable branch_aq(int j, const Weight& lambda, const Group& g);
// Dispatches on the label; throws for labels that are not unitarizable.
BranchTable branch(const RepLabel& rep);

// Psi on the Grothendieck group, as a sorted multiset of M'-types.
std::vector<Weight> psi(const RepLabel& rep);

// mu_i = (a_1+1, ..., a_i+1, a_{i+2}, ..., a_n) for 0 <= i <= n-1.
Weight telescoping_mu(const Weight& a, int i);

// Compares K-multiplicities of I(mu, nu)|_K with phi(Psi) on the window
// cutoff/2 <= lambda_1 <= cutoff.
bool phi_ktype_check(const Weight& mu, std::complex<double> nu, const Group& g, int cutoff);

}  // namespace spinor
