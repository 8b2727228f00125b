#pragma once

#include "gcs/real.hpp"
#include "gcs/precision.hpp"
#include "gcs/errors.hpp"
#include "gcs/series.hpp"
#include "gcs/integers.hpp"
#include "gcs/linalg.hpp"
#include "gcs/basis.hpp"
#include "gcs/functional.hpp"
#include "gcs/charlier.hpp"
#include "gcs/sobolev.hpp"
#include "gcs/asymptotics.hpp"
#include "gcs/verify.hpp"
#include "gcs/asymptotics_run.hpp"
#include "gcs/report.hpp"
