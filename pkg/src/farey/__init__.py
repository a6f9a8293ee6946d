"""Complex continued fractions and Farey graphs over Euclidean imaginary quadratic fields."""
