#pragma once

#include "sgsm/balanced_parens.hpp"
#include "sgsm/bit_vector.hpp"
#include "sgsm/build.hpp"
#include "sgsm/index.hpp"
#include "sgsm/kcover.hpp"
#include "sgsm/mss_enum.hpp"
#include "sgsm/one_page_graph.hpp"
#include "sgsm/oracle.hpp"
#include "sgsm/pattern_marks.hpp"
#include "sgsm/rmq.hpp"
