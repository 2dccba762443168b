from distutils.core import setup

from setuptools import find_packages

setup(
    name='willmore_lab',
    version='0.1.0',
    packages=find_packages(),
    package_data={'willmore_lab.cli': ['report_schema.json']},
    license='Apache License 2.0',
    description='Numerical lab for the willmore equation on the unit disk.',
    keywords=['willmore energy', 'conformal immersion', 'spectral methods', 'elliptic systems', 'geometric analysis'],
    install_requires=[
        'numba',
        'pandas',
        'numpy',
        'scipy',
        'tqdm',
    ],
    entry_points={
        'console_scripts': ['willmore_lab=willmore_lab.cli.main:main'],
    },
    classifiers=[
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
)
