#pragma once

#include "dethom/errors.hpp"
#include "dethom/scalar.hpp"
#include "dethom/ring.hpp"
#include "dethom/mpoly.hpp"
#include "dethom/mpoly_text.hpp"
#include "dethom/upoly.hpp"
#include "dethom/series.hpp"
#include "dethom/geom.hpp"
#include "dethom/zdp.hpp"
#include "dethom/groebner.hpp"
#include "dethom/detsys.hpp"
#include "dethom/homotopy.hpp"
#include "dethom/system_file.hpp"
#include "dethom/json_io.hpp"
