"""
Perturbation sets, image translations, and network knowledge
============================================================

A classifier "knows" an input's class when every point in a perturbation
set around the input maps to the same class.  This script generates the
two perturbation families — epsilon offsets and image translations —
and extracts the knowledge set of a small network over them.
"""
import numpy as np

from masks import (AffineGrid, Composite, EpsilonGrid, InputPoint, Layer,
                   MlpNetwork, Quadrant2D, ckc, generate_perturbations,
                   translate_image, load_weights, write_weights)

# --- epsilon offsets ----------------------------------------------------------
x0 = InputPoint(np.array([0.5, 0.5], dtype=np.float32))
grid = EpsilonGrid(epsilon=0.1, metric="linf", steps=2)
points = generate_perturbations(x0, grid)
print("epsilon grid around (0.5, 0.5):")
for p in points:
    print("  ", p.features)

# a quadrant classifier is robust here (everything stays in quadrant 1)...
print("deep inside a quadrant:", ckc(Quadrant2D(), x0, grid))

# ...but not next to the axis
near_axis = InputPoint(np.array([0.05, 0.5], dtype=np.float32))
print("next to the axis:      ", ckc(Quadrant2D(), near_axis, grid))

# --- image translations ---------------------------------------------------------
# shift a 5x5 image diagonally by t*(width, height) pixels for five evenly
# spaced t in [-0.2, 0.2]; bilinear interpolation, zero padding
img = np.zeros((5, 5), dtype=np.float32)
img[2, 2] = 1.0
x_img = InputPoint(img.reshape(-1), (5, 5))

shifts = generate_perturbations(x_img, AffineGrid(-0.2, 0.2, 5))
print(f"\naffine grid yields {len(shifts)} images; the t=0.2 shift:")
print(translate_image(img, 0.2 * 5, 0.2 * 5))

# --- a tiny network as the classifier -------------------------------------------
# 25 -> 2: one output neuron sums the top-left quadrant, the other the
# bottom-right, so translation changes the verdict
w = np.zeros((2, 25), dtype=np.float32)
w[0, [0, 1, 5, 6]] = 1.0          # top-left mass -> "tl"
w[1, [18, 19, 23, 24]] = 1.0      # bottom-right mass -> "br"
net = MlpNetwork((Layer(w, np.zeros(2, np.float32)),), ("tl", "br"))

spec = Composite((AffineGrid(-0.5, 0.5, 5), EpsilonGrid(0.02, steps=2)))
print("\nnetwork knowledge over translations + noise:",
      ckc(net, x_img, spec))

# --- networks round-trip through a portable weight file --------------------------
data = write_weights(net)
again = load_weights(data)
print(f"\nweight file: {len(data)} bytes, "
      f"digest match: {net.digest() == again.digest()}")
