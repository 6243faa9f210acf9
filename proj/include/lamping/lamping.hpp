#pragma once

#include "lamping/context.hpp"
#include "lamping/derivation.hpp"
#include "lamping/derivation_io.hpp"
#include "lamping/dot.hpp"
#include "lamping/error.hpp"
#include "lamping/formula.hpp"
#include "lamping/pipeline.hpp"
#include "lamping/port_graph.hpp"
#include "lamping/proofnet.hpp"
#include "lamping/readback.hpp"
#include "lamping/semantics.hpp"
#include "lamping/sharegraph.hpp"
#include "lamping/term.hpp"
#include "lamping/translate.hpp"
#include "lamping/weight.hpp"
