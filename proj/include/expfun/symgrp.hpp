#pragma once

#include <string>
#include <vector>

namespace expfun::symgrp {

struct NakaokaTuple {
  std::vector<long> entries;  // (j_1, ..., j_k), twist level k = size
  long degree() const;
  bool operator==(const NakaokaTuple&) const = default;
};

bool admissible(int p, const std::vector<long>& entries);
// all admissible k-tuples of degree <= degree_bound, sorted by degree then entries
std::vector<NakaokaTuple> nakaoka_tuples(int p, int k, long degree_bound);

// dim H_i(S_d, V^{⊗d}) for i = 0..i_bound, dim V = dim_v, from the series
std::vector<long> symgroup_homology_dims(int p, int d, int dim_v, int i_bound);

// the same by linear algebra: free F_p[S_d]-resolution built greedily, then V^{⊗d} tensored in
// (d <= 3, dim_v <= 2, i_bound <= 4)
std::vector<long> brute_group_homology(int p, int d, int dim_v, int i_bound);
// normalized bar complex; exponential in i_bound, used only at the smallest sizes
std::vector<long> bar_group_homology(int p, int d, int dim_v, int i_bound);

std::string tuple_json(const NakaokaTuple& t);

}  // namespace expfun::symgrp
