#pragma once

// Umbrella header: the whole workbench except the CLI front end (cli.hpp
// drags in CLI11, which library consumers rarely want).

#include "qcsp/canonical.hpp"
#include "qcsp/collapse.hpp"
#include "qcsp/error.hpp"
#include "qcsp/fixtures.hpp"
#include "qcsp/fo.hpp"
#include "qcsp/generate.hpp"
#include "qcsp/homomorphism.hpp"
#include "qcsp/io.hpp"
#include "qcsp/microcosm.hpp"
#include "qcsp/partitioned.hpp"
#include "qcsp/polymorphism.hpp"
#include "qcsp/sentence.hpp"
#include "qcsp/solve.hpp"
#include "qcsp/structure.hpp"
#include "qcsp/verify.hpp"
