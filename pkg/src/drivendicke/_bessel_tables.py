"""Chebyshev tables for the compiled J0/J1 kernels.

Generated by tools/gen_bessel_tables.py against the installed scipy; do not
edit by hand.  Segments cover x in [0,4], [4,8], [8,12], [12,16].
"""

import numpy as np

SEG_WIDTH = 4.0
N_SEGS = 4

J0_COEFFS = np.array([
    [0.2686415576830472, -0.802934775593768, 0.03855173179113022, 0.10889279935610266, -0.005979794910747497, -0.004628947707369188, 0.00021538486032539352, 9.722939095217843e-05, -3.82536563460828e-06, -1.2205137151278983e-06, 4.131036578885298e-08, 1.0196395568306865e-08, -3.02003201353158e-10, -6.079051528562891e-11, 1.5983642432922362e-12, 2.7244615176299857e-13, -6.783150086007221e-15, -9.460336354913045e-17, -2.6387765553405616e-16, 4.153146322276298e-16, -7.388827654258834e-17, 3.856139395092646e-16, -2.0689757866245888e-16, 7.438846521110241e-16, -3.7381618816583837e-16, 8.068293011983878e-16, -3.316159993604004e-16, 7.571877076588606e-16, -3.465109038900864e-16, 8.540551170857907e-16, -3.8038856005618057e-16, 8.505312350611862e-16, -3.55674360109446e-16, 8.597259701418061e-16, -3.9667910236011867e-16, 9.22107433861679e-16, -4.4072198701279233e-16, 1.0796668845145396e-15],
    [0.0037774281971646377, 0.3461730526176732, -0.13116418189578516, -0.06442588820760535, 0.015161046102401148, 0.002706557194354126, -0.0005330963192916638, -5.405176736030276e-05, 9.40290819319375e-06, 6.437633339245829e-07, -1.0108811194764045e-07, -5.128910127563512e-09, 7.361507413963555e-10, 2.934045574947274e-11, -3.882789412946503e-12, -1.268190240461976e-13, 1.565648538980697e-14, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [-0.051192512227423166, -0.06829912793183056, 0.17722824366757595, 0.006291799446194431, -0.01693036461443452, 3.4349420202605444e-05, 0.0005745621158322595, -7.947947673349242e-06, -9.975137501888985e-06, 1.8090520349011035e-07, 1.0592188159374421e-07, -2.0775370357538332e-09, -7.627021639712409e-10, 1.5157865147019606e-11, 3.98099756123412e-12, -7.779570428914269e-14, -1.581922261869547e-14, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.043365167582096666, -0.1458351041468586, -0.11700620409403394, 0.036619589428456445, 0.010363606491754157, -0.002132868984175074, -0.0003329186497282915, 5.497916843506759e-05, 5.5227980774469475e-06, -7.951574734216286e-07, -5.6106233565727804e-08, 7.348330726709825e-09, 3.8659483416560786e-10, -4.7167958300635324e-11, -1.9323702810383126e-12, 2.2282407694055533e-13, 7.383970469952855e-15, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
])
J0_LENS = np.array([38, 17, 17, 17], dtype=np.int64)

J1_COEFFS = np.array([
    [0.2493656917874822, -0.054446399678051365, -0.30420339201880364, 0.022657063904208956, 0.02247500604950462, -0.0012621157387809566, -0.0006697324873416392, 3.0193423171728094e-05, 1.087324932202321e-05, -4.095019037893311e-07, -1.1137411924765638e-07, 3.601756989649971e-09, 7.862246980601752e-10, -2.2277978399817528e-11, -4.059257005947686e-12, 1.0238542927578104e-13, 1.5973819472919734e-14, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [-0.08302777471332183, 0.20480853613359654, 0.18011750319102943, -0.05751982765797373, -0.013160161431786622, 0.003124356751630827, 0.00037262453998400586, -7.422116411944081e-05, -5.737831537468939e-06, 1.002101425583362e-06, 5.603846988227808e-08, -8.779694538079066e-09, -3.795384313636079e-10, 5.411317978066518e-11, 1.890583546615674e-12, -2.479456193264272e-13, -7.309584064409505e-15, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.024653006318068, -0.290103650594269, -0.018993115295694373, 0.06435283674088298, -0.00011771695711126151, -0.003368621716855114, 5.403014390209926e-05, 7.875097813880028e-05, -1.6054898114551344e-06, -1.0501218758704064e-06, 2.265701958805101e-08, 9.096940521002507e-09, -1.9588771743933132e-10, -5.548348376228319e-11, 1.1637209204143824e-12, 2.5187090928526725e-13, -5.098794988169223e-15, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.02313145139940103, 0.19451186818493707, -0.09957220134805674, -0.03950054000313054, 0.010286566937312756, 0.001953885963886051, -0.0003777779835627946, -4.36259344839283e-05, 7.076195482175687e-06, 5.564501358664268e-07, -8.022177954177677e-08, -4.612199866668176e-09, 6.098561650287317e-10, 2.6937413993336035e-11, -3.328336319368196e-12, -1.172404823267351e-13, 1.371929276801361e-14, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
])
J1_LENS = np.array([17, 17, 17, 17], dtype=np.int64)
