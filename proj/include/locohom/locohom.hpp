#pragma once

#include "locohom/canon.hpp"
#include "locohom/decomposition.hpp"
#include "locohom/deletion.hpp"
#include "locohom/dp.hpp"
#include "locohom/errors.hpp"
#include "locohom/extension.hpp"
#include "locohom/generators.hpp"
#include "locohom/graph.hpp"
#include "locohom/hom.hpp"
#include "locohom/ilp.hpp"
#include "locohom/io.hpp"
#include "locohom/lihom.hpp"
#include "locohom/matching.hpp"
#include "locohom/pipeline.hpp"
#include "locohom/refinement.hpp"
#include "locohom/report.hpp"
#include "locohom/search.hpp"
