from setuptools import setup, find_packages

setup(
    name='finsler',
    version='0.1.0',
    packages=find_packages(exclude=['examples', 'tests*']),
    install_requires=['numpy', 'scipy', 'progress'],
    python_requires='>=3.6',
    license='GPL-3.0',
    description='Finsler geometry toolkit: fundamental tensors, Cartan and Berwald connections, geodesics and the '
                'geometrized Maxwell equations, checked numerically over sampled points.',
    entry_points={
        'console_scripts': [
            'finsler=finsler.cli.runner:main',
        ],
    },
)
