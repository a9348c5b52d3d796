#pragma once

#include "psdrank/graph.hpp"
#include "psdrank/decomposition.hpp"
#include "psdrank/gf.hpp"
#include "psdrank/sym.hpp"
#include "psdrank/rand.hpp"
#include "psdrank/partial.hpp"
#include "psdrank/gcr.hpp"
#include "psdrank/completion.hpp"
#include "psdrank/mlt.hpp"
