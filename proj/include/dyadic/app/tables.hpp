#pragma once

#include "dyadic/app/emit.hpp"
#include "dyadic/dirichlet/crest.hpp"
#include "dyadic/dirichlet/k1_law.hpp"
#include "dyadic/lattice/structure.hpp"
#include "dyadic/measure/harmonic.hpp"
#include "dyadic/measure/histogram.hpp"

namespace dyadic::app {

// Same columns and bytes as the library's write_*_csv functions.
Table crest_table(const CrestField& f, unsigned max_depth);
Table histogram_table(const DyadicHistogram& h);
Table increment_table(const IncrementLaw& law);
Table edge_table(const RootedLattice& g, const std::vector<EdgeRecord>& edges, std::size_t label_bits);

Table crest_levels_table(const CrestPipeline& p);
Table g_profile_table(const GMeasureProfile& p);
Table counts_table(const std::vector<std::uint64_t>& counts, unsigned resolution);

}  // namespace dyadic::app
