"""Frozen Chebyshev tables for the large-argument Bessel correction.

Generated by tools/gen_bessel_coeffs.py from the integral-representation
quadrature oracle; do not edit by hand.
"""

import numpy as np

K0_MID = np.array([
    np.float64(2.4235605209667206),
    np.float64(-0.022356526056998133),
    np.float64(0.0007734181154692849),
    np.float64(-4.2810066888758026e-05),
    np.float64(3.0817001736687293e-06),
    np.float64(-2.639367221076346e-07),
    np.float64(2.563713016531799e-08),
    np.float64(-2.742705562663872e-09),
    np.float64(3.169426573042718e-10),
    np.float64(-3.902382121149609e-11),
    np.float64(5.068054772146742e-12),
    np.float64(-6.886343347408304e-13),
    np.float64(9.755159643039708e-14),
    np.float64(-1.3766765505351941e-14),
    np.float64(1.6364224790047879e-15),
    np.float64(4.070817756958907e-16),
    np.float64(4.163336342344337e-16),
    np.float64(-2.9605947323337506e-16),
    np.float64(-1.3183898417423734e-16),
    np.float64(-1.239749044164758e-15),
    np.float64(-5.238864897449957e-16),
    np.float64(-1.1102230246251565e-16),
    np.float64(-2.411265631607762e-16),
    np.float64(1.1102230246251565e-16),
    np.float64(-1.1472304587793283e-15),
    np.float64(-2.9605947323337506e-16),
    np.float64(-3.631354476378116e-16),
    np.float64(-8.511709855459533e-16),
    np.float64(-4.394632805807911e-17),
    np.float64(1.239749044164758e-15),
    np.float64(-1.6422048905913772e-16),
    np.float64(4.903485025427774e-16),
    np.float64(1.2952601953960159e-15),
    np.float64(6.476300976980079e-17),
    np.float64(2.3412984514100304e-15),
    np.float64(3.700743415417188e-17),
    np.float64(1.2027416100105861e-15),
    np.float64(-1.1102230246251565e-15),
    np.float64(-2.6656917414176933e-15),
    np.float64(3.0531133177191805e-16),
    np.float64(-1.7809827686695217e-15),
    np.float64(1.0685896612017132e-15),
    np.float64(-2.2898349882893854e-16),
    np.float64(-7.91033905045424e-16),
    np.float64(-1.3461454173580023e-15),
    np.float64(-2.4147350785597155e-15),
    np.float64(9.361724358688168e-16),
    np.float64(-5.921189464667501e-16),
])

K0_FAR = np.array([
    np.float64(2.487981301736924),
    np.float64(-0.009174852691025618),
    np.float64(0.00014445509317740726),
    np.float64(-4.013614175309617e-06),
    np.float64(1.5678318093908145e-07),
    np.float64(-7.770110332927516e-09),
    np.float64(4.6111810434827183e-10),
    np.float64(-3.158591906545401e-11),
    np.float64(2.4346728337102754e-12),
    np.float64(-2.076857204732126e-13),
    np.float64(1.918835460893812e-14),
    np.float64(-1.4802973661668753e-15),
    np.float64(2.9605947323337506e-16),
    np.float64(2.220446049250313e-16),
    np.float64(-5.273559366969494e-16),
    np.float64(7.216449660063518e-16),
    np.float64(3.887226189084695e-16),
    np.float64(-3.3306690738754696e-16),
    np.float64(-1.8272420613622367e-16),
    np.float64(-1.2027416100105861e-15),
    np.float64(-6.036837696399289e-16),
    np.float64(-7.401486830834377e-17),
    np.float64(-3.128284668344842e-16),
    np.float64(2.5905203907920316e-16),
    np.float64(-1.1472304587793283e-15),
    np.float64(-3.3306690738754696e-16),
    np.float64(-4.649058915617843e-16),
    np.float64(-8.97430278238668e-16),
    np.float64(1.376213957608267e-16),
    np.float64(1.1657341758564144e-15),
    np.float64(-1.6422048905913772e-16),
    np.float64(6.013708050052931e-16),
    np.float64(1.3415194880887307e-15),
    np.float64(8.326672684688674e-17),
    np.float64(2.311229911159766e-15),
    np.float64(7.401486830834377e-17),
    np.float64(9.992007221626409e-16),
    np.float64(-1.0362081563168126e-15),
    np.float64(-2.8160344426690167e-15),
    np.float64(1.942890293094024e-16),
    np.float64(-1.834180955266144e-15),
    np.float64(1.050085944124627e-15),
    np.float64(-2.301399811462564e-16),
    np.float64(-8.97430278238668e-16),
    np.float64(-1.3739009929736312e-15),
    np.float64(-2.4980018054066022e-15),
    np.float64(9.396418828207704e-16),
    np.float64(-5.921189464667501e-16),
])

K1_MID = np.array([
    np.float64(2.7744313406973875),
    np.float64(0.07571989953199385),
    np.float64(-0.0014410515564755079),
    np.float64(6.650116955135102e-05),
    np.float64(-4.369984709645437e-06),
    np.float64(3.5402775006021514e-07),
    np.float64(-3.311163799627851e-08),
    np.float64(3.44597752185057e-09),
    np.float64(-3.8989359657515266e-10),
    np.float64(4.7207867244954585e-11),
    np.float64(-6.047893667352847e-12),
    np.float64(8.132013581037729e-13),
    np.float64(-1.1368683772161603e-13),
    np.float64(1.7023419710919065e-14),
    np.float64(-3.0600522116230877e-15),
    np.float64(1.1287267417022424e-15),
    np.float64(3.3191042507022906e-16),
    np.float64(-2.7755575615628914e-16),
    np.float64(-1.2258712563569435e-16),
    np.float64(-1.3877787807814457e-15),
    np.float64(-6.372217568421471e-16),
    np.float64(-1.6653345369377348e-16),
    np.float64(-3.215020842143682e-16),
    np.float64(2.220446049250313e-16),
    np.float64(-1.258252761241844e-15),
    np.float64(-3.700743415417188e-16),
    np.float64(-5.38920759870128e-16),
    np.float64(-9.43689570931383e-16),
    np.float64(-8.095376221225099e-18),
    np.float64(1.239749044164758e-15),
    np.float64(-1.7809827686695218e-16),
    np.float64(7.031412489292658e-16),
    np.float64(1.4155343563970746e-15),
    np.float64(1.942890293094024e-16),
    np.float64(2.4956888407719662e-15),
    np.float64(-2.220446049250313e-16),
    np.float64(9.992007221626409e-16),
    np.float64(-1.1472304587793283e-15),
    np.float64(-3.0808688933348094e-15),
    np.float64(2.9605947323337506e-16),
    np.float64(-1.9613940101711096e-15),
    np.float64(1.1564823173178713e-15),
    np.float64(-2.42861286636753e-16),
    np.float64(-8.557969148152248e-16),
    np.float64(-1.5265566588595902e-15),
    np.float64(-2.562764815176403e-15),
    np.float64(1.239749044164758e-15),
    np.float64(-5.551115123125783e-16),
])

K1_FAR = np.array([
    np.float64(2.56379308343739),
    np.float64(0.02832887813049737),
    np.float64(-0.00024753706739053893),
    np.float64(5.771972451755017e-06),
    np.float64(-2.0689392211022578e-07),
    np.float64(9.739983597434332e-09),
    np.float64(-5.585337574387506e-10),
    np.float64(3.732999095025964e-11),
    np.float64(-2.8254019494392915e-12),
    np.float64(2.3699560832331673e-13),
    np.float64(-2.1873706549750217e-14),
    np.float64(2.5905203907920318e-15),
    np.float64(-1.4802973661668753e-16),
    np.float64(4.440892098500626e-16),
    np.float64(-5.9905784037065735e-16),
    np.float64(7.401486830834376e-16),
    np.float64(4.252963721936472e-16),
    np.float64(-2.8680761469483207e-16),
    np.float64(-8.789265611615822e-17),
    np.float64(-1.239749044164758e-15),
    np.float64(-5.585809592645319e-16),
    np.float64(-1.1102230246251565e-16),
    np.float64(-3.14563190310461e-16),
    np.float64(1.850371707708594e-16),
    np.float64(-1.2212453270876722e-15),
    np.float64(-2.220446049250313e-16),
    np.float64(-4.527628272299467e-16),
    np.float64(-9.159339953157541e-16),
    np.float64(2.659909329831104e-17),
    np.float64(1.2119934685491292e-15),
    np.float64(-2.093232994345347e-16),
    np.float64(6.476300976980079e-16),
    np.float64(1.3276417002809162e-15),
    np.float64(3.700743415417188e-17),
    np.float64(2.2863655413374318e-15),
    np.float64(-7.401486830834377e-17),
    np.float64(1.1842378929335002e-15),
    np.float64(-1.0732155904709846e-15),
    np.float64(-2.9062400634198107e-15),
    np.float64(2.5905203907920316e-16),
    np.float64(-1.880440247958859e-15),
    np.float64(1.050085944124627e-15),
    np.float64(-3.157196726277789e-16),
    np.float64(-8.095376221225099e-16),
    np.float64(-1.4467593789646571e-15),
    np.float64(-2.507253663945145e-15),
    np.float64(9.685539407537172e-16),
    np.float64(-5.551115123125783e-16),
])

