import numpy as np

# samples of u, or of a function of u, taken elementwise
Array = np.ndarray
