#pragma once

#include "vigemin/antemers.hpp"
#include "vigemin/approx.hpp"
#include "vigemin/count.hpp"
#include "vigemin/counting.hpp"
#include "vigemin/distribution.hpp"
#include "vigemin/empirical.hpp"
#include "vigemin/oracle.hpp"
#include "vigemin/parallel.hpp"
#include "vigemin/postmers.hpp"
#include "vigemin/precompute.hpp"
#include "vigemin/word.hpp"
