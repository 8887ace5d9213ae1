#pragma once

#include "fracprime/asymptotics.hpp"
#include "fracprime/constants.hpp"
#include "fracprime/lemma_lab.hpp"
#include "fracprime/logint.hpp"
#include "fracprime/prime_table.hpp"
#include "fracprime/quotient_pi.hpp"
#include "fracprime/quotient_sum.hpp"
#include "fracprime/report.hpp"
#include "fracprime/sigma.hpp"
#include "fracprime/util.hpp"
