#pragma once

#include "packcol/certificate.hpp"
#include "packcol/claims.hpp"
#include "packcol/families.hpp"
#include "packcol/graph.hpp"
#include "packcol/graph_io.hpp"
#include "packcol/packings.hpp"
#include "packcol/patterns.hpp"
#include "packcol/solver.hpp"
#include "packcol/table.hpp"
#include "packcol/theorems.hpp"
