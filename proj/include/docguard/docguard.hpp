// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

// Umbrella header: the whole library in one include.

#include "docguard/centroid.hpp"
#include "docguard/classifier.hpp"
#include "docguard/common.hpp"
#include "docguard/context.hpp"
#include "docguard/corpus.hpp"
#include "docguard/evaluation.hpp"
#include "docguard/knn.hpp"
#include "docguard/model_io.hpp"
#include "docguard/mutation.hpp"
#include "docguard/naive_bayes.hpp"
#include "docguard/policy.hpp"
#include "docguard/prediction.hpp"
#include "docguard/scan.hpp"
#include "docguard/sparse_vector.hpp"
#include "docguard/synthetic.hpp"
#include "docguard/vectorizer.hpp"
