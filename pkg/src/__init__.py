# Block-type Lie Algebra Whittaker Toolkit Package
